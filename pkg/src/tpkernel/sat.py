"""3SAT to trivially perfect editing.

Each variable ``x`` with ``p`` occurrences becomes a cycle
``bot_0 top_0 dia_0 bot_1 ... dia_{p-1}`` plus a vertex ``paw_i`` on
``top_i`` and ``bot_i``.  Each clause becomes one vertex wired to
``top_i`` (positive literal) or ``bot_i`` (negative literal), where ``i``
numbers the occurrences of ``x`` in clause order.  The budget is ``5m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Optional

from .graph import Graph, Pair, apply_edits

Literal = int  # DIMACS style: +v or -v, variables numbered from 1


class UnsupportedFormulaError(ValueError):
    pass


class NotNormalizedError(ValueError):
    pass


class UnsatisfiedAssignmentError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    def occurrences(self) -> dict[int, list[int]]:
        """Clause indices in which each variable occurs, in clause order."""
        occ: dict[int, list[int]] = {}
        for ci, c in enumerate(self.clauses):
            for lit in c:
                occ.setdefault(abs(lit), []).append(ci)
        return occ

    def is_normalized(self) -> bool:
        if any(len(c) != 3 or len({abs(l) for l in c}) != 3 for c in self.clauses):
            return False
        return all(len(cs) >= 2 for cs in self.occurrences().values())

    def satisfied_by(self, alpha: Mapping[int, bool]) -> bool:
        return all(any(alpha[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def normalize(f: CnfFormula) -> CnfFormula:
    """Bring ``f`` to three distinct variables per clause, two occurrences per variable.

    Repeated literals collapse; a clause left with fewer than three distinct
    variables is rejected.  While some variable occurs once, the earliest
    clause holding such a variable is appended again.
    """
    clauses = []
    for ci, c in enumerate(f.clauses):
        lits = tuple(dict.fromkeys(c))
        if len({abs(l) for l in lits}) < 3 or len(lits) != 3:
            raise UnsupportedFormulaError(
                f"clause {ci} {c} does not have exactly three distinct variables"
            )
        clauses.append(lits)
    while True:
        count: dict[int, int] = {}
        for c in clauses:
            for lit in c:
                count[abs(lit)] = count.get(abs(lit), 0) + 1
        once = {v for v, n in count.items() if n == 1}
        if not once:
            break
        first = next(c for c in clauses if any(abs(l) in once for l in c))
        clauses.append(first)
    return CnfFormula(f.num_vars, tuple(clauses))


@dataclass(frozen=True)
class TpeInstance:
    """The reduced instance with its gadget layout.

    ``slots[(role, x, i)]`` is the vertex for role ``top``, ``bot``, ``dia``
    or ``paw`` of occurrence ``i`` of variable ``x``; ``clause_vertex[c]``
    is ``v_c``.
    """

    g: Graph
    k: int
    formula: CnfFormula
    slots: dict[tuple[str, int, int], int] = field(hash=False)
    clause_vertex: tuple[int, ...]

    def label(self, v: int) -> Optional[str]:
        return None if self.g.labels is None else self.g.labels[v]


def reduce(f: CnfFormula) -> TpeInstance:
    if not f.is_normalized():
        raise NotNormalizedError("formula must be normalized before reduction")
    occ = f.occurrences()
    slots: dict[tuple[str, int, int], int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []

    def new(label: str) -> int:
        labels.append(label)
        return len(labels) - 1

    for x in sorted(occ):
        p = len(occ[x])
        for i in range(p):
            for role in ("bot", "top", "dia", "paw"):
                slots[(role, x, i)] = new(f"{role}:x{x}:{i}")
        for i in range(p):
            bot, top, dia, paw = (slots[(r, x, i)] for r in ("bot", "top", "dia", "paw"))
            edges += [(bot, top), (top, dia), (dia, slots[("bot", x, (i + 1) % p)])]
            edges += [(paw, top), (paw, bot)]
    clause_vertex = []
    for ci, c in enumerate(f.clauses):
        vc = new(f"clause:{ci}")
        clause_vertex.append(vc)
        for lit in c:
            x = abs(lit)
            i = occ[x].index(ci)
            edges.append((vc, slots[("top" if lit > 0 else "bot", x, i)]))
    g = Graph(len(labels), edges, labels)
    return TpeInstance(g, 5 * len(f.clauses), f, slots, tuple(clause_vertex))


def assignment_editset(f: CnfFormula, inst: TpeInstance, alpha: Mapping[int, bool]) -> frozenset:
    """The deletion set built from a satisfying assignment; it has size ``5m``.

    Each clause keeps the edge to its earliest satisfied literal.
    """
    if not f.satisfied_by(alpha):
        raise UnsatisfiedAssignmentError("assignment does not satisfy the formula")
    occ = f.occurrences()
    s = inst.slots
    out = set()
    for x, cs in occ.items():
        p = len(cs)
        for i in range(p):
            if alpha[x]:
                out.add(Pair.of(s[("dia", x, i)], s[("bot", x, (i + 1) % p)]))
            else:
                out.add(Pair.of(s[("top", x, i)], s[("dia", x, i)]))
    for ci, c in enumerate(f.clauses):
        vc = inst.clause_vertex[ci]
        keep = next(l for l in c if alpha[abs(l)] == (l > 0))
        for lit in c:
            if lit == keep:
                continue
            x = abs(lit)
            i = occ[x].index(ci)
            out.add(Pair.of(vc, s[("top" if lit > 0 else "bot", x, i)]))
    return frozenset(out)


def assignment_from_bits(f: CnfFormula, bits: str) -> dict[int, bool]:
    """``bits[j]`` gives variable ``j+1``: ``1``/``t`` true, ``0``/``f`` false."""
    if len(bits) != f.num_vars:
        raise ValueError(f"expected {f.num_vars} assignment bits, got {len(bits)}")
    table = {"1": True, "t": True, "T": True, "0": False, "f": False, "F": False}
    try:
        return {j + 1: table[b] for j, b in enumerate(bits)}
    except KeyError as e:
        raise ValueError(f"bad assignment character {e.args[0]!r}") from None


def satisfying_assignments(f: CnfFormula):
    """All satisfying assignments by exhaustive search (small formulas only)."""
    for values in product((False, True), repeat=f.num_vars):
        alpha = {j + 1: v for j, v in enumerate(values)}
        if f.satisfied_by(alpha):
            yield alpha


# -- verification -------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violation: Optional[str]
    n: int
    m: int
    k: int
    max_degree: int


def verify_instance(inst: TpeInstance) -> VerifyReport:
    """Check counts, degree bound and gadget shapes; stop at the first violation."""
    g = inst.g
    m = len(inst.formula.clauses)
    n_e = g.num_edges()
    delta = g.max_degree()

    def report(msg: Optional[str]) -> VerifyReport:
        return VerifyReport(msg is None, msg, g.n, n_e, inst.k, delta)

    if g.n != 13 * m:
        return report(f"vertex count {g.n} != 13m = {13 * m}")
    if n_e != 18 * m:
        return report(f"edge count {n_e} != 18m = {18 * m}")
    if inst.k != 5 * m:
        return report(f"budget {inst.k} != 5m = {5 * m}")
    if m and delta != 4:
        return report(f"maximum degree {delta} != 4")
    for ci, vc in enumerate(inst.clause_vertex):
        if g.degree(vc) != 3:
            return report(f"clause vertex {vc} of clause {ci} has degree {g.degree(vc)}")
    occ = inst.formula.occurrences()
    clause_set = set(inst.clause_vertex)
    for x, cs in occ.items():
        p = len(cs)
        ring = []
        for i in range(p):
            ring += [inst.slots[(r, x, i)] for r in ("bot", "top", "dia")]
        for j, v in enumerate(ring):
            nxt = ring[(j + 1) % len(ring)]
            if not g.has_edge(v, nxt):
                return report(f"variable x{x} cycle misses edge {v}-{nxt}")
        ring_set = set(ring)
        for i in range(p):
            paw = inst.slots[("paw", x, i)]
            want = {inst.slots[("top", x, i)], inst.slots[("bot", x, i)]}
            if set(g.neighbors(paw)) != want:
                return report(f"paw vertex {paw} of x{x} has neighbours {g.neighbors(paw)}")
        for v in ring:
            extra = set(g.neighbors(v)) - ring_set - clause_set
            extra -= {inst.slots[("paw", x, i)] for i in range(p)}
            if extra:
                return report(f"vertex {v} of x{x} has stray neighbours {sorted(extra)}")
            inside = set(g.neighbors(v)) & ring_set
            if len(inside) != 2:
                return report(f"vertex {v} of x{x} has {len(inside)} cycle neighbours")
    return report(None)


def component_census(g: Graph) -> dict[str, int]:
    """Count components of ``g`` by shape: ``paw``, ``cricket`` or ``other``."""
    out = {"paw": 0, "cricket": 0, "other": 0}
    for comp in g.components():
        sub, _ = g.induced([v for v in range(g.n) if comp >> v & 1])
        degs = sorted(sub.degree(v) for v in range(sub.n))
        if sub.n == 4 and sub.num_edges() == 4 and degs == [1, 2, 2, 3]:
            out["paw"] += 1
        elif sub.n == 5 and sub.num_edges() == 5 and degs == [1, 1, 2, 2, 4]:
            out["cricket"] += 1
        else:
            out["other"] += 1
    return out


def apply_assignment(f: CnfFormula, inst: TpeInstance, alpha: Mapping[int, bool]) -> Graph:
    return apply_edits(inst.g, assignment_editset(f, inst, alpha))
