"""Trivially perfect graphs: recognition, universal clique decompositions,
the UCD quasi-order, independence number, and TP-set systems."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .graph import Graph, Obstruction, bits_of, find_obstruction, iter_bits


class NotTriviallyPerfectError(ValueError):
    """The input graph has an induced P4 or C4; ``witness`` holds one."""

    def __init__(self, witness: Obstruction) -> None:
        super().__init__(f"graph is not trivially perfect: {witness.kind} on {witness.vertices}")
        self.witness = witness


class UcdStructureError(ValueError):
    pass


@dataclass
class UcdNode:
    id: int
    parent: Optional[int]
    bag: tuple[int, ...]
    children: list[int] = field(default_factory=list)


@dataclass
class UcdForest:
    """Rooted forest of bags partitioning the vertex set of a TP graph.

    Node ids are assigned in DFS preorder, visiting components and children
    by smallest contained vertex, so ids are stable for a fixed graph.
    ``n`` is the size of the vertex universe the bags are drawn from.
    """

    nodes: list[UcdNode]
    roots: list[int]
    vertex_to_node: dict[int, int]
    n: int

    def depth(self, t: int) -> int:
        d = 0
        while self.nodes[t].parent is not None:
            t = self.nodes[t].parent
            d += 1
        return d

    def ancestors(self, t: int) -> list[int]:
        """Strict ancestors of ``t``, nearest first."""
        out = []
        p = self.nodes[t].parent
        while p is not None:
            out.append(p)
            p = self.nodes[p].parent
        return out

    def is_ancestor(self, a: int, b: int) -> bool:
        """True iff ``a`` is a strict ancestor of ``b``."""
        p = self.nodes[b].parent
        while p is not None:
            if p == a:
                return True
            p = self.nodes[p].parent
        return False

    def root_of(self, t: int) -> int:
        while self.nodes[t].parent is not None:
            t = self.nodes[t].parent
        return t

    def subtree_nodes(self, t: int) -> list[int]:
        out = []
        stack = [t]
        while stack:
            s = stack.pop()
            out.append(s)
            stack.extend(reversed(self.nodes[s].children))
        return out

    def subtree_vertices(self, t: int) -> set[int]:
        return {v for s in self.subtree_nodes(t) for v in self.nodes[s].bag}

    def path_vertices(self, t: int) -> set[int]:
        """Vertices in the bags of ``t`` and all its ancestors."""
        out = set(self.nodes[t].bag)
        for a in self.ancestors(t):
            out.update(self.nodes[a].bag)
        return out

    def leaves(self) -> list[int]:
        return [t.id for t in self.nodes if not t.children]

    def vertices(self) -> set[int]:
        return set(self.vertex_to_node)


def _peel(g: Graph, mask: int, parent: Optional[int], nodes: list[UcdNode], roots: list[int]) -> None:
    adj = g.adj
    for comp in g.components(mask):
        size = comp.bit_count()
        universal = 0
        for v in iter_bits(comp):
            if (adj[v] & comp).bit_count() == size - 1:
                universal |= 1 << v
        if not universal:
            # a connected graph without universal vertex is never TP
            sub, remap = g.induced(iter_bits(comp))
            w = find_obstruction(sub)
            back = {new: old for old, new in remap.items()}
            assert w is not None
            raise NotTriviallyPerfectError(
                Obstruction(tuple(back[v] for v in w.vertices), w.kind)
            )
        node = UcdNode(len(nodes), parent, tuple(iter_bits(universal)))
        nodes.append(node)
        if parent is None:
            roots.append(node.id)
        else:
            nodes[parent].children.append(node.id)
        rest = comp & ~universal
        if rest:
            _peel(g, rest, node.id, nodes, roots)


def build_ucd(g: Graph, vertices: Optional[Iterable[int]] = None) -> UcdForest:
    """Universal clique decomposition of ``g`` (or of ``g[vertices]``).

    Bags keep the original vertex ids.  Raises
    :class:`NotTriviallyPerfectError` with a witness obstruction otherwise.
    """
    mask = g.all_mask if vertices is None else bits_of(vertices)
    nodes: list[UcdNode] = []
    roots: list[int] = []
    if sys.getrecursionlimit() < 4 * g.n + 200:
        sys.setrecursionlimit(4 * g.n + 200)
    _peel(g, mask, None, nodes, roots)
    vertex_to_node = {v: t.id for t in nodes for v in t.bag}
    return UcdForest(nodes, roots, vertex_to_node, g.n)


def is_trivially_perfect(g: Graph) -> bool:
    """Recognition by recursive peeling of universal cliques and components."""
    try:
        build_ucd(g)
    except NotTriviallyPerfectError:
        return False
    return True


def check_forest(u: UcdForest) -> None:
    """Raise :class:`UcdStructureError` unless ``u`` is a well-formed forest."""
    seen: set[int] = set()
    for t in u.nodes:
        if not t.bag:
            raise UcdStructureError(f"node {t.id} has an empty bag")
        if seen.intersection(t.bag):
            raise UcdStructureError(f"bags overlap at node {t.id}")
        seen.update(t.bag)
        if len(t.children) == 1:
            raise UcdStructureError(f"internal node {t.id} has a single child")
        for c in t.children:
            if u.nodes[c].parent != t.id:
                raise UcdStructureError(f"parent link of node {c} is inconsistent")
        if (t.parent is None) != (t.id in u.roots):
            raise UcdStructureError(f"root list disagrees with node {t.id}")
    if any(not 0 <= v < u.n for v in seen):
        raise UcdStructureError("bag vertex outside the universe")
    # every node must be reachable from exactly one root
    reached = [s for r in u.roots for s in u.subtree_nodes(r)]
    if sorted(reached) != list(range(len(u.nodes))):
        raise UcdStructureError("forest has cycles or unreachable nodes")


def ucd_to_graph(u: UcdForest) -> Graph:
    """Graph whose edges join same-bag and ancestor/descendant-bag vertices."""
    check_forest(u)
    rows = [0] * u.n
    below = [0] * len(u.nodes)
    for r in u.roots:
        order = u.subtree_nodes(r)
        for t in reversed(order):
            below[t] = bits_of(u.nodes[t].bag)
            for c in u.nodes[t].children:
                below[t] |= below[c]
        for t in order:
            p = u.nodes[t].parent
            above = 0
            while p is not None:
                above |= bits_of(u.nodes[p].bag)
                p = u.nodes[p].parent
            for v in u.nodes[t].bag:
                rows[v] |= (above | below[t]) & ~(1 << v)
    return Graph.from_bitsets(rows)


def preceq(u: UcdForest, a: int, b: int) -> str:
    """Classify ``a`` against ``b``: same-bag, ancestor, descendant or incomparable.

    ``"ancestor"`` means the bag of ``a`` is a strict ancestor of the bag of ``b``.
    """
    ta = u.vertex_to_node[a]
    tb = u.vertex_to_node[b]
    if ta == tb:
        return "same-bag"
    if u.is_ancestor(ta, tb):
        return "ancestor"
    if u.is_ancestor(tb, ta):
        return "descendant"
    return "incomparable"


def alpha_tp(g: Graph) -> tuple[int, list[int]]:
    """Independence number of a TP graph with a witness independent set.

    The witness takes the smallest vertex of every leaf bag.
    """
    u = build_ucd(g)
    witness = sorted(min(u.nodes[t].bag) for t in u.leaves())
    return len(witness), witness


# -- TP-set systems ---------------------------------------------------------


@dataclass(frozen=True)
class SetFamily:
    ground: frozenset
    members: tuple[frozenset, ...]

    @classmethod
    def of(cls, ground: Iterable, members: Iterable[Iterable]) -> "SetFamily":
        ground = frozenset(ground)
        fam = tuple(frozenset(m) for m in members)
        for m in fam:
            if not m <= ground:
                raise ValueError(f"member {set(m)} is not a subset of the ground set")
        return cls(ground, fam)


def is_tp_set_system(f: SetFamily) -> bool:
    """No member may contain both an element of ``X1 - X2`` and one of ``X2 - X1``."""
    members = list(dict.fromkeys(f.members))
    for x1, x2 in combinations(members, 2):
        d1 = x1 - x2
        d2 = x2 - x1
        if not d1 or not d2:
            continue
        for y in members:
            if y & d1 and y & d2:
                return False
    return True
