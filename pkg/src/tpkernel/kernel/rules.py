"""Reduction Rules 1-4 and their deletion/completion adaptations.

Each ``find_*`` function reports where a rule applies without changing
anything; the ``rule*`` wrappers apply it and return the new instance,
a :class:`NoInstance`, or ``None`` when the rule does not apply.
"""

from __future__ import annotations

from typing import Optional, Union

from ..graph import Graph, Pair, apply_edits, bad_edges, complement_induced, iter_bits, true_twin_classes
from ..matching import max_bipartite_matching, max_matching
from ..modular import rule4_target
from ..problem import Instance, Mode
from .outcome import NoInstance

RuleResult = Optional[Union[Instance, NoInstance]]


def rule1_candidates(g: Graph, bad: Optional[list[Pair]] = None) -> list[Pair]:
    """Non-edges ``uv`` that could satisfy Rule 1, in canonical order.

    Rule 1 needs a C4 ``u-x-v-y``, and every edge of such a C4 is bad, so
    ``u`` and ``v`` share a neighbour ``x`` with ``ux`` and ``vx`` both bad.
    """
    if bad is None:
        bad = bad_edges(g)
    bad_nb: dict[int, list[int]] = {}
    for u, v in bad:
        bad_nb.setdefault(u, []).append(v)
        bad_nb.setdefault(v, []).append(u)
    adj = g.adj
    out = set()
    for nbrs in bad_nb.values():
        nbrs.sort()
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1:]:
                if not adj[u] >> v & 1:
                    out.add(Pair(u, v))
    return sorted(out)


def rule1_applies(g: Graph, k: int, u: int, v: int) -> bool:
    common = g.adj[u] & g.adj[v]
    if common.bit_count() < 2 * (k + 1):
        return False
    h, _ = complement_induced(g, iter_bits(common))
    return len(max_matching(h, threshold=k + 1)) >= k + 1


def rule2_applies(g: Graph, k: int, u: int, v: int) -> bool:
    n1 = g.adj[u] & ~g.closed(v)
    n2 = g.adj[v] & ~g.closed(u)
    if n1.bit_count() < k + 1 or n2.bit_count() < k + 1:
        return False
    h, remap = complement_induced(g, iter_bits(n1 | n2))
    a = [remap[w] for w in iter_bits(n1)]
    b = [remap[w] for w in iter_bits(n2)]
    return len(max_bipartite_matching(h, a, b, threshold=k + 1)) >= k + 1


def find_rule1(g: Graph, k: int, bad: Optional[list[Pair]] = None) -> Optional[Pair]:
    for p in rule1_candidates(g, bad):
        if rule1_applies(g, k, p.u, p.v):
            return p
    return None


def find_rule2(g: Graph, k: int, bad: Optional[list[Pair]] = None) -> Optional[Pair]:
    # an edge can only qualify if both private neighbourhoods are non-empty
    for p in sorted(bad_edges(g) if bad is None else bad):
        if rule2_applies(g, k, p.u, p.v):
            return p
    return None


def find_rule3(g: Graph, k: int) -> Optional[int]:
    for cls in true_twin_classes(g):
        if len(cls) > 2 * k + 5:
            return cls[0]
    return None


def rule1_add(inst: Instance, mode: Mode = Mode.EDITING) -> RuleResult:
    mode = Mode.parse(mode)
    p = find_rule1(inst.g, inst.k)
    if p is None:
        return None
    if mode is Mode.DELETION:
        return NoInstance(f"rule 1 needs edge {p.u}-{p.v} added in deletion mode")
    if inst.k == 0:
        return NoInstance("budget exhausted")
    return Instance(apply_edits(inst.g, [p]), inst.k - 1)


def rule2_delete(inst: Instance, mode: Mode = Mode.EDITING) -> RuleResult:
    mode = Mode.parse(mode)
    p = find_rule2(inst.g, inst.k)
    if p is None:
        return None
    if mode is Mode.COMPLETION:
        return NoInstance(f"rule 2 needs edge {p.u}-{p.v} deleted in completion mode")
    if inst.k == 0:
        return NoInstance("budget exhausted")
    return Instance(apply_edits(inst.g, [p]), inst.k - 1)


def rule3_twin(inst: Instance) -> Optional[Instance]:
    v = find_rule3(inst.g, inst.k)
    if v is None:
        return None
    return Instance(inst.g.remove_vertices([v])[0], inst.k)


def rule4_module(inst: Instance) -> Optional[Instance]:
    hit = rule4_target(inst.g, inst.k)
    if hit is None:
        return None
    module, keep = hit
    drop = set(module) - set(keep)
    return Instance(inst.g.remove_vertices(drop)[0], inst.k)
