"""Exact solvers for TP editing, deletion and completion.

:func:`solve_branching` is the bounded search tree: find an obstruction,
branch on the legal pairs inside it.  :func:`solve_bruteforce` and
:func:`optimal_editsets` enumerate edit sets directly and serve as its
independent oracle on tiny inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .graph import Graph, Pair, apply_edits, iter_bits
from .problem import Mode
from .tp import is_trivially_perfect

DEFAULT_NODE_LIMIT = 10**8
DEFAULT_ENUMERATION_LIMIT = 5_000_000

# cap on obstructions inspected per search node when choosing where to branch
_SCAN_CAP = 64


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class SolveResult:
    """``status`` is ``"feasible"``, ``"infeasible"`` or ``"resource-exceeded"``."""

    status: str
    witness: Optional[frozenset]
    nodes_explored: int

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


class _Exceeded(Exception):
    pass


def _obstructions(rows: list[int], cap: int):
    """Yield up to ``cap`` obstructions ``(a, u, v, b)`` of the graph ``rows``."""
    count = 0
    for u, row in enumerate(rows):
        nu = row | 1 << u
        for v in iter_bits(row >> (u + 1)):
            v += u + 1
            nv = rows[v] | 1 << v
            a_side = nu & ~nv
            if not a_side:
                continue
            b_side = nv & ~nu
            if not b_side:
                continue
            for a in iter_bits(a_side):
                for b in iter_bits(b_side):
                    yield (a, u, v, b)
                    count += 1
                    if count >= cap:
                        return


def solve_branching(
    g: Graph, k: int, mode: Mode = Mode.EDITING, node_limit: int = DEFAULT_NODE_LIMIT
) -> SolveResult:
    """Decide whether at most ``k`` legal edits make ``g`` trivially perfect.

    Each search node branches over the unfrozen legal pairs of the
    obstruction with fewest of them.  Taking pair ``j`` freezes pairs
    ``0..j-1`` of that obstruction for the rest of the branch, so every
    edit set is reached at most once and no pair is toggled twice on a path.
    A greedy packing of obstructions with disjoint free pairs gives a lower
    bound used for pruning.
    """
    mode = Mode.parse(mode)
    rows = list(g.adj)
    frozen: set[Pair] = set()
    path: list[Pair] = []
    nodes = 0

    def free_pairs(w) -> list[Pair]:
        out = []
        for i in range(4):
            for j in range(i + 1, 4):
                p = Pair.of(w[i], w[j])
                if p not in frozen and mode.allows(g, p.u, p.v):
                    out.append(p)
        out.sort()
        return out

    def search(budget: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise _Exceeded
        best = None
        packed: list[frozenset] = []
        used: set[Pair] = set()
        for w in _obstructions(rows, _SCAN_CAP):
            fp = free_pairs(w)
            if not fp:
                return False
            if best is None or len(fp) < len(best):
                best = fp
            if used.isdisjoint(fp):
                used.update(fp)
                packed.append(frozenset(fp))
        if best is None:
            return True
        if budget == 0 or len(packed) > budget:
            return False
        added = []
        found = False
        for p in best:
            rows[p.u] ^= 1 << p.v
            rows[p.v] ^= 1 << p.u
            frozen.add(p)
            added.append(p)
            path.append(p)
            if search(budget - 1):
                found = True
            else:
                path.pop()
            rows[p.u] ^= 1 << p.v
            rows[p.v] ^= 1 << p.u
            if found:
                break
        for p in added:
            frozen.discard(p)
        return found

    try:
        ok = search(k) if k >= 0 else False
    except _Exceeded:
        return SolveResult("resource-exceeded", None, nodes)
    if ok:
        return SolveResult("feasible", frozenset(path), nodes)
    return SolveResult("infeasible", None, nodes)


def legal_pairs(g: Graph, mode: Mode) -> list[Pair]:
    mode = Mode.parse(mode)
    if mode is Mode.DELETION:
        return list(g.edges())
    if mode is Mode.COMPLETION:
        return list(g.non_edges())
    return sorted(list(g.edges()) + list(g.non_edges()))


def _check_enumeration(count: int, k: int, limit: int) -> None:
    total = sum(comb(count, s) for s in range(min(k, count) + 1))
    if total > limit:
        raise EnumerationTooLarge(f"{total} candidate edit sets exceed the limit {limit}")


def solve_bruteforce(
    g: Graph, k: int, mode: Mode = Mode.EDITING, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> SolveResult:
    """Try every legal edit set of size ``0..k`` in lexicographic order."""
    pairs = legal_pairs(g, mode)
    _check_enumeration(len(pairs), k, limit)
    tried = 0
    for size in range(min(k, len(pairs)) + 1):
        for combo in combinations(pairs, size):
            tried += 1
            if is_trivially_perfect(apply_edits(g, combo)):
                return SolveResult("feasible", frozenset(combo), tried)
    return SolveResult("infeasible", None, tried)


def optimal_editsets(
    g: Graph, k: int, mode: Mode = Mode.EDITING, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> list[frozenset]:
    """All minimum-size legal editing sets of size at most ``k``."""
    pairs = legal_pairs(g, mode)
    _check_enumeration(len(pairs), k, limit)
    for size in range(min(k, len(pairs)) + 1):
        found = [
            frozenset(combo)
            for combo in combinations(pairs, size)
            if is_trivially_perfect(apply_edits(g, combo))
        ]
        if found:
            return found
    return []


def is_valid_solution(g: Graph, witness, k: int, mode: Mode) -> bool:
    mode = Mode.parse(mode)
    witness = list(witness)
    if len(witness) > k or len(set(witness)) != len(witness):
        return False
    if not all(mode.allows(g, p[0], p[1]) for p in witness):
        return False
    return is_trivially_perfect(apply_edits(g, witness))


def min_edits(g: Graph, mode: Mode = Mode.EDITING, cap: int = 64) -> Optional[int]:
    """Smallest feasible budget up to ``cap`` (``None`` if none is found)."""
    for k in range(cap + 1):
        if solve_branching(g, k, mode).feasible:
            return k
    return None
