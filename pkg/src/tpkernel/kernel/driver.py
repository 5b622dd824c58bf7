"""The kernelization driver.

Loop: exhaust Rules 1-4 in that order (restarting at Rule 1 after any
edit), build the modulator, analyse ``G - X``, and shorten the first long
comb with Rule 5 before starting over.  When no comb is long the current
instance is the kernel.
"""

from __future__ import annotations

from typing import Optional

from ..graph import Graph, apply_edits, bad_edges
from ..modular import rule4_targets
from ..problem import Instance, Mode
from .outcome import Kernel, KernelOutcome, NoInstance, ReductionTrace, TraceStep
from .rules import find_rule1, find_rule2, find_rule3
from .structure import analyze, rule5_index


class _State:
    def __init__(self, g: Graph, k: int) -> None:
        self.g = g
        self.k = k
        self.origin = list(range(g.n))
        self.trace = ReductionTrace()

    def edit(self, rule: str, p) -> None:
        self.trace.steps.append(TraceStep(rule, (p.u, p.v), self.k, self.k - 1))
        self.g = apply_edits(self.g, [p])
        self.k -= 1

    def remove(self, rule: str, vertices, detail=None) -> None:
        g2, remap = self.g.remove_vertices(vertices)
        self.trace.steps.append(
            TraceStep(rule, tuple(sorted(vertices)), self.k, self.k, remap, detail or {})
        )
        self.origin = [self.origin[old] for old in sorted(remap)]
        self.g = g2

    def remove_rule4_batch(self, hits) -> None:
        """Record one step per disjoint module, then rebuild the graph once.

        ``hits`` uses ids of the current graph; each step is logged in the
        ids of the graph it applies to, as a sequential replay expects.
        """
        ids = list(range(self.g.n))  # batch-start id -> id at this step
        size = self.g.n
        gone_total: set[int] = set()
        for module, keep in hits:
            drop = set(module) - set(keep)
            gone_total |= drop
            cur_drop = {ids[v] for v in drop}
            remap = {}
            for old in range(size):
                if old not in cur_drop:
                    remap[old] = len(remap)
            detail = {"module": sorted(ids[v] for v in module), "keep": [ids[v] for v in keep]}
            self.trace.steps.append(
                TraceStep("rule4", tuple(sorted(cur_drop)), self.k, self.k, remap, detail)
            )
            ids = [remap.get(i, -1) for i in ids]
            size = len(remap)
        g2, remap = self.g.remove_vertices(gone_total)
        self.origin = [self.origin[old] for old in sorted(remap)]
        self.g = g2

    def refuse(self, reason: str) -> NoInstance:
        self.trace.steps.append(TraceStep("no-instance", (), self.k, 0, None, {"reason": reason}))
        return NoInstance(reason, self.trace)


def _exhaust_rules_1_to_4(st: _State, mode: Mode) -> Optional[NoInstance]:
    while True:
        bad = bad_edges(st.g)
        p = find_rule1(st.g, st.k, bad)
        if p is not None:
            if mode is Mode.DELETION:
                return st.refuse(f"rule 1 on {p.u}-{p.v} would add an edge")
            if st.k == 0:
                return st.refuse("budget exhausted by rule 1")
            st.edit("rule1", p)
            continue
        p = find_rule2(st.g, st.k, bad)
        if p is not None:
            if mode is Mode.COMPLETION:
                return st.refuse(f"rule 2 on {p.u}-{p.v} would delete an edge")
            if st.k == 0:
                return st.refuse("budget exhausted by rule 2")
            st.edit("rule2", p)
            continue
        # deleting vertices never enables Rules 1 or 2, so Rules 3-4 can
        # repeat here without rescanning them
        while True:
            v = find_rule3(st.g, st.k)
            if v is not None:
                st.remove("rule3", [v])
                continue
            hits = rule4_targets(st.g, st.k)
            if not hits:
                return None
            # the modules are disjoint, so later ones survive earlier trims
            st.remove_rule4_batch(hits)


def exhaust_rules_1_to_4(inst: Instance, mode: Mode = Mode.EDITING) -> KernelOutcome:
    """Apply Rules 1-4 until none fires; the structural pass is skipped.

    The result is a :class:`Kernel` whose structural fields are empty, or a
    :class:`NoInstance`.
    """
    st = _State(inst.g, inst.k)
    refused = _exhaust_rules_1_to_4(st, Mode.parse(mode))
    if refused is not None:
        return refused
    return Kernel(g=st.g, k=st.k, trace=st.trace, origin=tuple(st.origin))


def kernelize(inst: Instance, mode: Mode = Mode.EDITING) -> KernelOutcome:
    """Reduce ``inst`` to an equivalent instance of size polynomial in ``k``."""
    mode = Mode.parse(mode)
    st = _State(inst.g, inst.k)
    while True:
        refused = _exhaust_rules_1_to_4(st, mode)
        if refused is not None:
            return refused
        anatomy = analyze(Instance(st.g, st.k))
        if isinstance(anatomy, NoInstance):
            return st.refuse(anatomy.reason)
        fired = False
        for comb in anatomy.partition.combs:
            hit = rule5_index(comb, st.k)
            if hit is None:
                continue
            beta, case = hit
            st.remove(
                "rule5",
                comb.teeth[beta - 1],
                {"beta": beta, "case": case, "length": comb.length, "shaft": list(comb.shaft)},
            )
            fired = True
            break
        if fired:
            continue
        return Kernel(
            g=st.g,
            k=st.k,
            trace=st.trace,
            origin=tuple(st.origin),
            modulator=tuple(sorted(anatomy.modulator.x)),
            important=len(anatomy.important.i),
            comb_lengths=tuple(c.length for c in anatomy.partition.combs),
        )
