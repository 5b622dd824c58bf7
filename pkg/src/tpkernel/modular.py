"""Modular decomposition by recursive splitting.

A node whose module induces a disconnected graph is a ``union`` node, one
whose complement is disconnected is a ``join`` node; otherwise the node is
``prime`` and its children are the maximal proper modules.  For a prime
module ``M`` the maximal module holding ``v`` is ``v`` together with every
``w`` whose smallest enclosing module with ``v`` is not all of ``M``.
This is cubic rather than linear time, which is plenty at desk scale.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, bits_of, iter_bits, lowest_bit
from .tp import NotTriviallyPerfectError, alpha_tp, build_ucd


@dataclass
class MdNode:
    id: int
    kind: str  # leaf | union | join | prime
    module: frozenset
    children: list[int] = field(default_factory=list)


@dataclass
class MdTree:
    nodes: list[MdNode]
    root: int

    def modules(self) -> list[frozenset]:
        return [t.module for t in self.nodes]


def _co_components(g: Graph, mask: int) -> list[int]:
    """Components of the complement of ``g[mask]`` as bitsets."""
    adj = g.adj
    remaining = mask
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= ~adj[v]
            reach &= remaining & ~comp
            comp |= reach
            frontier = reach
        out.append(comp)
        remaining &= ~comp
    return out


def module_closure(g: Graph, seed: int, domain: int) -> int:
    """Smallest module of ``g[domain]`` containing the bitset ``seed``."""
    adj = g.adj
    m = seed
    union = 0
    inter = domain
    for v in iter_bits(seed):
        union |= adj[v]
        inter &= adj[v]
    while True:
        splitters = (union & ~inter) & domain & ~m
        if not splitters:
            return m
        m |= splitters
        for v in iter_bits(splitters):
            union |= adj[v]
            inter &= adj[v]


def _modules_avoiding(g: Graph, v: int, mask: int) -> list[int]:
    """Maximal modules of ``g[mask]`` not containing ``v``, by refinement."""
    adj = g.adj
    parts = [mask & ~(1 << v)]
    changed = True
    while changed:
        changed = False
        for y in iter_bits(mask):
            ny = adj[y] & mask
            nxt = []
            for x in parts:
                inside = x & ny
                if inside and inside != x and not x >> y & 1:
                    nxt += [inside, x & ~inside]
                    changed = True
                else:
                    nxt.append(x)
            parts = nxt
    return parts


def _prime_children(g: Graph, mask: int) -> list[int]:
    # each maximal module avoiding v is a child, or lies inside v's child
    v = lowest_bit(mask)
    own = 1 << v
    children = []
    for part in _modules_avoiding(g, v, mask):
        if module_closure(g, own | (part & -part), mask) != mask:
            own |= part
        else:
            children.append(part)
    children.append(own)
    return sorted(children, key=lambda p: p & -p)


def build_md(g: Graph) -> MdTree:
    """The modular decomposition tree of ``g`` (``g.n >= 1``)."""
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")
    if sys.getrecursionlimit() < 4 * g.n + 200:
        sys.setrecursionlimit(4 * g.n + 200)
    nodes: list[MdNode] = []

    def build(mask: int) -> int:
        node = MdNode(len(nodes), "leaf", frozenset(iter_bits(mask)))
        nodes.append(node)
        if mask & (mask - 1) == 0:
            return node.id
        parts = g.components(mask)
        if len(parts) > 1:
            node.kind = "union"
        else:
            parts = _co_components(g, mask)
            if len(parts) > 1:
                node.kind = "join"
            else:
                node.kind = "prime"
                parts = _prime_children(g, mask)
        node.children = [build(p) for p in parts]
        return node.id

    root = build(g.all_mask)
    return MdTree(nodes, root)


def _tp_alpha(g: Graph, module: frozenset) -> Optional[int]:
    sub, _ = g.induced(module)
    try:
        return len(build_ucd(sub).leaves())
    except NotTriviallyPerfectError:
        return None


def rule4_candidates(g: Graph, t: MdTree) -> list[frozenset]:
    """Node modules plus, per union node, the union of its TP children.

    Node modules come in tree-id order, followed by the union-node sets;
    duplicates are dropped.
    """
    out = [node.module for node in t.nodes]
    tp_cache: dict[frozenset, bool] = {}

    def is_tp(module: frozenset) -> bool:
        if len(module) <= 3:
            return True  # obstructions need four vertices
        if module not in tp_cache:
            tp_cache[module] = _tp_alpha(g, module) is not None
        return tp_cache[module]

    for node in t.nodes:
        if node.kind != "union":
            continue
        members = [t.nodes[c].module for c in node.children if is_tp(t.nodes[c].module)]
        if members:
            out.append(frozenset().union(*members))
    return list(dict.fromkeys(out))


def rule4_targets(g: Graph, k: int, t: Optional[MdTree] = None) -> list[tuple[frozenset, list[int]]]:
    """Pairwise disjoint modules where the module rule applies, with their kept sets.

    Candidates are scanned by size, ties in candidate order, and each one is
    taken unless it meets a module already taken.  Trimming one module
    leaves a disjoint one a module with the same induced graph, so the list
    can be applied in order without rebuilding the decomposition.  The kept
    set is the ``2k+4`` smallest ids of the leaf-bag witness of a maximum
    independent set of ``g[M]``.
    """
    if t is None:
        t = build_md(g)
    need = 2 * k + 5
    out = []
    used = set()
    not_tp: list[frozenset] = []  # supersets of these cannot be TP
    for module in sorted(rule4_candidates(g, t), key=len):
        if len(module) < need or used & module:
            continue
        if any(bad <= module for bad in not_tp):
            continue
        sub, remap = g.induced(module)
        try:
            alpha, witness = alpha_tp(sub)
        except NotTriviallyPerfectError:
            not_tp.append(module)
            continue
        if alpha >= need:
            back = sorted(remap)
            out.append((module, sorted(back[i] for i in witness)[: need - 1]))
            used |= module
    return out


def rule4_target(g: Graph, k: int, t: Optional[MdTree] = None) -> Optional[tuple[frozenset, list[int]]]:
    """The smallest module where the module rule applies, or ``None``."""
    hits = rule4_targets(g, k, t)
    return hits[0] if hits else None
