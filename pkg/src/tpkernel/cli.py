"""Command line front end: ``tpkernel <subcommand> ...``.

Exit status: 0 success, 1 usage or input error, 2 verification mismatch,
3 solver resource guard hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .generate import gen_planted
from .graph import find_obstruction
from .io import FormatError, RunReport, parse_dimacs_cnf, parse_graph, write_editset, write_graph, write_trace
from .kernel import Kernel, NoInstance, kernelize
from .problem import Instance, Mode
from .sat import (
    UnsatisfiedAssignmentError,
    UnsupportedFormulaError,
    apply_assignment,
    assignment_editset,
    assignment_from_bits,
    component_census,
    normalize,
    reduce,
    verify_instance,
)
from .solver import DEFAULT_NODE_LIMIT, solve_branching
from .tp import is_trivially_perfect

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2, which means mismatch here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _report(inst: Instance, mode: Mode, out, seconds: float) -> RunReport:
    kernel = None
    if isinstance(out, Kernel):
        kernel = {"n": out.g.n, "m": out.g.num_edges(), "k": out.k}
    extra = {}
    if isinstance(out, NoInstance):
        extra["reason"] = out.reason
    else:
        extra["modulator_size"] = len(out.modulator)
        extra["important_bags"] = out.important
        extra["comb_lengths"] = list(out.comb_lengths)
    return RunReport(
        input={"n": inst.g.n, "m": inst.g.num_edges(), "k": inst.k, "mode": mode.value},
        outcome="kernel" if isinstance(out, Kernel) else "no-instance",
        kernel=kernel,
        rule_counts=out.trace.counts(),
        trace_length=len(out.trace),
        wall_time=round(seconds, 6),
        extra=extra,
    )


def cmd_recognize(args) -> int:
    g = parse_graph(_read(args.graph))
    w = find_obstruction(g)
    if w is None:
        print("trivially-perfect")
    else:
        print(f"not-trivially-perfect {w.kind} " + " ".join(map(str, w.vertices)))
    return EXIT_OK


def cmd_kernelize(args) -> int:
    g = parse_graph(_read(args.graph))
    mode = Mode.parse(args.mode)
    inst = Instance(g, args.k)
    t0 = time.perf_counter()
    out = kernelize(inst, mode)
    report = _report(inst, mode, out, time.perf_counter() - t0)
    if args.out:
        _write(args.out, write_graph(out.g, [f"kernel k={out.k} mode={mode.value}"]))
    if args.trace:
        _write(args.trace, write_trace(out.trace))
    text = report.to_json() + "\n"
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = parse_graph(_read(args.graph))
    res = solve_branching(g, args.k, Mode.parse(args.mode), node_limit=args.node_limit)
    witness = None if res.witness is None else json.loads(write_editset(res.witness))
    print(json.dumps({"status": res.status, "witness": witness, "nodes": res.nodes_explored}))
    return EXIT_RESOURCE if res.status == "resource-exceeded" else EXIT_OK


def verify_one(path: str, k: int, mode: str, node_limit: int) -> dict:
    """Kernelize and solve both instances; used by ``verify`` and its workers."""
    g = parse_graph(Path(path).read_bytes())
    m = Mode.parse(mode)
    direct = solve_branching(g, k, m, node_limit=node_limit)
    out = kernelize(Instance(g, k), m)
    if isinstance(out, NoInstance):
        reduced_status = "infeasible"
    else:
        reduced_status = solve_branching(out.g, out.k, m, node_limit=node_limit).status
    return {
        "file": path,
        "direct": direct.status,
        "kernel": reduced_status,
        "kernel_n": out.g.n,
        "kernel_k": out.k,
    }


def cmd_verify(args) -> int:
    files: list[str] = []
    for p in args.graphs:
        path = Path(p)
        if path.is_dir():
            files += sorted(str(f) for f in path.iterdir() if f.suffix in (".tpg", ".graph", ".txt"))
        else:
            files.append(p)
    if not files:
        print("no input files", file=sys.stderr)
        return EXIT_USAGE
    job = [(f, args.k, args.mode, args.node_limit) for f in files]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(verify_one, *zip(*job)))
    else:
        rows = [verify_one(*j) for j in job]
    verdicts = set()
    for r in rows:
        if "resource-exceeded" in (r["direct"], r["kernel"]):
            r["verdict"] = "resource-exceeded"
        elif r["direct"] == r["kernel"]:
            r["verdict"] = "agree"
        else:
            r["verdict"] = "mismatch"
        verdicts.add(r["verdict"])
        print(json.dumps(r))
    if "mismatch" in verdicts:
        return EXIT_MISMATCH
    return EXIT_RESOURCE if "resource-exceeded" in verdicts else EXIT_OK


def cmd_reduce_cnf(args) -> int:
    f = parse_dimacs_cnf(_read(args.cnf))
    nf = normalize(f)
    inst = reduce(nf)
    check = verify_instance(inst)
    report = {
        "n": inst.g.n,
        "m": inst.g.num_edges(),
        "k": inst.k,
        "clauses": len(nf.clauses),
        "max_degree": check.max_degree,
        "structure_ok": check.ok,
        "violation": check.violation,
    }
    if args.out:
        _write(args.out, write_graph(inst.g, [f"reduced from {args.cnf} k={inst.k}"]))
    status = EXIT_OK
    if args.check_assignment is not None:
        alpha = assignment_from_bits(nf, args.check_assignment)
        try:
            fa = assignment_editset(nf, inst, alpha)
        except UnsatisfiedAssignmentError:
            report["assignment"] = {"satisfies": False}
            status = EXIT_MISMATCH
        else:
            edited = apply_assignment(nf, inst, alpha)
            census = component_census(edited)
            report["assignment"] = {
                "satisfies": True,
                "editset_size": len(fa),
                "deletions_only": all(inst.g.has_edge(*p) for p in fa),
                "result_tp": is_trivially_perfect(edited),
                "census": census,
                "editset": json.loads(write_editset(fa)),
            }
            ok = len(fa) == inst.k and is_trivially_perfect(edited) and census["other"] == 0
            if not ok:
                status = EXIT_MISMATCH
    print(json.dumps(report, indent=2))
    return status


def cmd_gen(args) -> int:
    planted = gen_planted(args.n, args.k, args.seed, Mode.parse(args.mode))
    prefix = Path(args.out)
    graph_path = prefix.with_suffix(".tpg")
    graph_path.write_bytes(
        write_graph(planted.instance.g, [f"planted n={args.n} k={args.k} seed={args.seed} mode={args.mode}"])
    )
    prefix.with_suffix(".planted.json").write_text(write_editset(planted.planted) + "\n")
    print(json.dumps({"graph": str(graph_path), "k": args.k, "planted": len(planted.planted)}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tpkernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def mode_k(sp):
        sp.add_argument("--mode", choices=["edit", "delete", "complete"], default="edit")
        sp.add_argument("--k", type=int, required=True)

    sp = sub.add_parser("recognize", help="test whether a graph is trivially perfect")
    sp.add_argument("graph")
    sp.set_defaults(func=cmd_recognize)

    sp = sub.add_parser("kernelize", help="run the reduction rules")
    mode_k(sp)
    sp.add_argument("graph")
    sp.add_argument("--out", help="write the kernel graph here")
    sp.add_argument("--report", help="write the JSON run report here instead of stdout")
    sp.add_argument("--trace", help="write the JSON-lines trace here")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("solve", help="exact branching solver")
    mode_k(sp)
    sp.add_argument("graph")
    sp.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check kernel equivalence with the exact solver")
    mode_k(sp)
    sp.add_argument("graphs", nargs="+", help="graph files or directories of them")
    sp.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("reduce-cnf", help="3SAT formula to editing instance")
    sp.add_argument("cnf")
    sp.add_argument("--out", help="write the reduced graph here")
    sp.add_argument("--check-assignment", metavar="BITS", help="e.g. 100 for x1=1 x2=0 x3=0")
    sp.set_defaults(func=cmd_reduce_cnf)

    sp = sub.add_parser("gen", help="planted instance generator")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--mode", choices=["edit", "delete", "complete"], default="edit")
    sp.add_argument("--out", required=True, help="output path prefix")
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", 0) is not None and getattr(args, "k", 0) < 0:
        print("tpkernel: error: --k must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (FormatError, UnsupportedFormulaError, OSError, ValueError) as e:
        print(f"tpkernel: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
