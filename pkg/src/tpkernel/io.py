"""Text formats: graph files, DIMACS CNF, run reports and trace streams.

Graph file::

    # comment
    p tpg <n> <m>
    e <u> <v>        (exactly m lines, 0-based ids)
    l <u> <text>     (optional vertex label)
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Optional, Union

from .graph import Graph, Pair
from .kernel.outcome import ReductionTrace, TraceStep
from .sat import CnfFormula

Source = Union[bytes, str]


class FormatError(ValueError):
    """Malformed input; ``line`` is 1-based (0 when the problem is global)."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _text(data: Source) -> str:
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_graph(data: Source) -> Graph:
    n: Optional[int] = None
    m = 0
    edges: list[tuple[int, int]] = []
    seen: set[Pair] = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(" ")
        if n is None:
            parts = line.split()
            if len(parts) != 4 or parts[:2] != ["p", "tpg"]:
                raise FormatError(lineno, "expected header 'p tpg <n> <m>'")
            n = _int(parts[2], lineno, "vertex count")
            m = _int(parts[3], lineno, "edge count")
            if n < 0 or m < 0:
                raise FormatError(lineno, "counts must be non-negative")
            continue
        if tag == "e":
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(lineno, "edge line needs two vertex ids")
            u = _int(parts[0], lineno, "vertex id")
            v = _int(parts[1], lineno, "vertex id")
            for w in (u, v):
                if not 0 <= w < n:
                    raise FormatError(lineno, f"vertex id {w} out of range for n={n}")
            if u == v:
                raise FormatError(lineno, f"self-loop at vertex {u}")
            p = Pair.of(u, v)
            if p in seen:
                raise FormatError(lineno, f"duplicate edge {u} {v}")
            seen.add(p)
            edges.append((u, v))
        elif tag == "l":
            parts = rest.strip().split(None, 1)
            if len(parts) != 2:
                raise FormatError(lineno, "label line needs a vertex id and text")
            u = _int(parts[0], lineno, "vertex id")
            if not 0 <= u < n:
                raise FormatError(lineno, f"vertex id {u} out of range for n={n}")
            if u in labels:
                raise FormatError(lineno, f"vertex {u} labelled twice")
            labels[u] = parts[1]
        elif tag == "p":
            raise FormatError(lineno, "second header line")
        else:
            raise FormatError(lineno, f"unknown line type {tag!r}")
    if n is None:
        raise FormatError(0, "missing header 'p tpg <n> <m>'")
    if len(edges) != m:
        raise FormatError(0, f"header promises {m} edges, found {len(edges)}")
    lab = [labels.get(v) for v in range(n)] if labels else None
    return Graph(n, edges, lab)


def write_graph(g: Graph, comments: Iterable[str] = ()) -> bytes:
    """Canonical form: comments, header, edges in canonical order, labels."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"p tpg {g.n} {g.num_edges()}")
    lines += [f"e {u} {v}" for u, v in g.edges()]
    if g.labels is not None:
        lines += [f"l {v} {t}" for v, t in enumerate(g.labels) if t is not None]
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_dimacs_cnf(data: Source) -> CnfFormula:
    nvars: Optional[int] = None
    ncls = 0
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break  # SATLIB end marker
        last_line = lineno
        if line.startswith("p"):
            parts = line.split()
            if nvars is not None:
                raise FormatError(lineno, "second header line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(lineno, "expected header 'p cnf <vars> <clauses>'")
            nvars = _int(parts[2], lineno, "variable count")
            ncls = _int(parts[3], lineno, "clause count")
            continue
        if nvars is None:
            raise FormatError(lineno, "clause before 'p cnf' header")
        for tok in line.split():
            lit = _int(tok, lineno, "literal")
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > nvars:
                raise FormatError(lineno, f"literal {lit} exceeds {nvars} declared variables")
            else:
                current.append(lit)
    if nvars is None:
        raise FormatError(0, "missing 'p cnf' header")
    if current:
        raise FormatError(last_line, "clause not terminated by 0")
    if len(clauses) != ncls:
        raise FormatError(0, f"header promises {ncls} clauses, found {len(clauses)}")
    return CnfFormula(nvars, tuple(clauses))


def write_dimacs_cnf(f: CnfFormula) -> bytes:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in f.clauses]
    return ("\n".join(lines) + "\n").encode("utf-8")


# -- reports and traces ------------------------------------------------------


@dataclass
class RunReport:
    input: dict[str, Any]
    outcome: str  # "kernel" or "no-instance"
    kernel: Optional[dict[str, int]]
    rule_counts: dict[str, int]
    trace_length: int
    wall_time: float
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def write_trace(trace: ReductionTrace) -> bytes:
    """One JSON object per line, one line per step."""
    return "".join(json.dumps(s.to_record(), sort_keys=True) + "\n" for s in trace.steps).encode()


def parse_trace(data: Source) -> ReductionTrace:
    steps = []
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            steps.append(TraceStep.from_record(json.loads(raw)))
        except (ValueError, KeyError, TypeError) as e:
            raise FormatError(lineno, f"bad trace record: {e}") from None
    return ReductionTrace(steps)


def write_editset(pairs: Iterable[Pair]) -> str:
    return json.dumps([list(p) for p in sorted(pairs)])
