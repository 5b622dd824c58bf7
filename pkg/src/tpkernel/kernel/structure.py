"""Modulator, X-neighbourhoods, important bags, and the tassel/comb anatomy.

Everything here works on original vertex ids.  The UCD of ``G - X`` is
built with :func:`build_ucd` restricted to the non-modulator vertices, so
its bags use the ids of ``G`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from ..graph import Graph, bad_edges, bits_of, find_obstruction_avoiding, iter_bits
from ..problem import Instance
from ..tp import UcdForest, build_ucd
from .outcome import NoInstance


class ModulatorViolationError(RuntimeError):
    """A vertex of X sees G - X in a way no TP-modulator allows."""


class InternalStructureError(RuntimeError):
    pass


@dataclass(frozen=True)
class Modulator:
    x: frozenset
    rounds: int


def build_modulator(inst: Instance) -> Union[Modulator, NoInstance]:
    """Greedy packing: add every violating obstruction until none is left.

    After ``k+1`` successful rounds the instance has no solution, because
    each round forces one more edit inside the growing set.
    """
    g, k = inst.g, inst.k
    bad = bad_edges(g)
    x: set[int] = set()
    rounds = 0
    while True:
        viol = find_obstruction_avoiding(g, x, bad)
        if viol is None:
            return Modulator(frozenset(x), rounds)
        x.update(viol.obstruction.vertices)
        rounds += 1
        if rounds == k + 1:
            return NoInstance(f"{rounds} obstructions packed against budget {k}")


def x_neighborhood(g: Graph, x: Iterable[int], v: int) -> frozenset:
    xs = set(x)
    if v in xs:
        raise ValueError(f"vertex {v} belongs to the modulator")
    return frozenset(w for w in g.neighbors(v) if w in xs)


# -- neighbourhood types --------------------------------------------------


@dataclass(frozen=True)
class NeighborhoodType:
    """Shape of ``U_x = N(x) - X`` inside the UCD of ``G - X``.

    ``kind`` 0: ``components`` lists the roots of the fully seen trees.
    ``kind`` 1: the bags strictly above ``t_x`` are seen, ``t_x`` partially.
    ``kind`` 2: the path to ``t_x`` plus whole subtrees at ``subtrees``.
    """

    kind: int
    t_x: Optional[int] = None
    components: tuple[int, ...] = ()
    subtrees: tuple[int, ...] = ()


class UcdIndex:
    """Per-node bitsets of a UCD forest (bag, subtree, root path)."""

    def __init__(self, u: UcdForest) -> None:
        self.u = u
        m = len(u.nodes)
        self.bag = [bits_of(t.bag) for t in u.nodes]
        self.below = list(self.bag)
        # preorder ids put every child after its parent
        for t in range(m - 1, -1, -1):
            for c in u.nodes[t].children:
                self.below[t] |= self.below[c]
        self.above = [0] * m  # strict ancestors' bags
        self.depth = [0] * m
        for t in range(m):
            p = u.nodes[t].parent
            if p is not None:
                self.above[t] = self.above[p] | self.bag[p]
                self.depth[t] = self.depth[p] + 1
        self.mask = 0
        for r in u.roots:
            self.mask |= self.below[r]


def classify_vertex_type(g: Graph, ucd: Union[UcdForest, UcdIndex], x: int) -> NeighborhoodType:
    """Recognise ``U_x`` as Type 0, 1 or 2.

    Type 0 is reported whenever ``U_x`` is a union of whole components, and
    Type 1 wins over Type 2 when both fit.  Raises
    :class:`ModulatorViolationError` when nothing fits.
    """
    ix = ucd if isinstance(ucd, UcdIndex) else UcdIndex(ucd)
    u = ix.u
    if ix.mask >> x & 1:
        raise ValueError(f"vertex {x} lies in the decomposition, not in X")
    ux = g.adj[x] & ix.mask
    if not ux:
        return NeighborhoodType(0)
    hit_roots = [r for r in u.roots if ix.below[r] & ux]
    whole = 0
    for r in hit_roots:
        whole |= ix.below[r]
    if whole == ux:
        return NeighborhoodType(0, components=tuple(hit_roots))
    if len(hit_roots) > 1:
        raise ModulatorViolationError(f"vertex {x} sees parts of several components")

    # walk down while exactly one child subtree is hit
    t = hit_roots[0]
    while True:
        hit = [c for c in u.nodes[t].children if ix.below[c] & ux]
        if len(hit) != 1:
            break
        t = hit[0]
    if not hit:
        if ux & ix.above[t] == ix.above[t] and ux & ~(ix.above[t] | ix.bag[t]) == 0:
            return NeighborhoodType(1, t_x=t)
    else:
        want = ix.above[t] | ix.bag[t]
        for c in hit:
            want |= ix.below[c]
        if want == ux:
            return NeighborhoodType(2, t_x=t, subtrees=tuple(hit))
    raise ModulatorViolationError(f"neighbourhood of vertex {x} has no admissible type")


# -- important bags --------------------------------------------------------


def _lca(u: UcdForest, depth: list[int], a: int, b: int) -> Optional[int]:
    while depth[a] > depth[b]:
        a = u.nodes[a].parent
    while depth[b] > depth[a]:
        b = u.nodes[b].parent
    while a != b:
        a = u.nodes[a].parent
        b = u.nodes[b].parent
        if a is None or b is None:
            return None
    return a


def lca_closure(u: UcdForest, m: Iterable[int]) -> set[int]:
    """Closure of ``m`` under lowest common ancestors, tree by tree.

    With nodes in DFS preorder it suffices to add the LCAs of consecutive
    members of each tree.
    """
    depth = UcdIndex(u).depth
    nodes = sorted(set(m))
    out = set(nodes)
    for a, b in zip(nodes, nodes[1:]):
        w = _lca(u, depth, a, b)
        if w is not None:
            out.add(w)
    return out


def lca_closure_naive(u: UcdForest, m: Iterable[int]) -> set[int]:
    """The definitional fixpoint, quadratic per round; used as a test oracle."""
    depth = UcdIndex(u).depth
    out = set(m)
    changed = True
    while changed:
        changed = False
        for a in sorted(out):
            for b in sorted(out):
                w = _lca(u, depth, a, b)
                if w is not None and w not in out:
                    out.add(w)
                    changed = True
    return out


@dataclass(frozen=True)
class ImportantBags:
    i0: frozenset
    i: frozenset


def mark_important_bags(u: UcdForest, classifications: dict[int, NeighborhoodType]) -> ImportantBags:
    i0 = frozenset(c.t_x for c in classifications.values() if c.kind in (1, 2))
    closed = lca_closure(u, i0)
    closed.update(u.root_of(t) for t in i0)
    return ImportantBags(i0, frozenset(closed))


# -- partition into V_I, V_0, tassels and combs ----------------------------


@dataclass(frozen=True)
class Comb:
    """A component of ``T - I`` between two important nodes.

    ``shaft[0]`` is ``a_1``, the parent of ``bottom``; ``shaft[-1]`` is
    ``a_d``, a child of ``top``.  ``teeth[i]`` is the tooth at ``a_{i+1}``.
    """

    shaft: tuple[int, ...]
    top: int
    bottom: int
    teeth: tuple[frozenset, ...]
    shaft_vertices: frozenset
    simple: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.shaft)


@dataclass
class Partition:
    v_i: set[int] = field(default_factory=set)
    v_0: set[int] = field(default_factory=set)
    tassels: dict[int, set[int]] = field(default_factory=dict)
    combs: list[Comb] = field(default_factory=list)


def partition_remainder(g: Graph, u: Union[UcdForest, UcdIndex], imp: ImportantBags) -> Partition:
    ix = u if isinstance(u, UcdIndex) else UcdIndex(u)
    u = ix.u
    important = imp.i
    out = Partition()
    for t in important:
        out.v_i.update(u.nodes[t].bag)
    for top in range(len(u.nodes)):
        parent = u.nodes[top].parent
        if top in important or (parent is not None and parent not in important):
            continue
        members = []
        lower = []
        stack = [top]
        while stack:
            s = stack.pop()
            members.append(s)
            for c in u.nodes[s].children:
                (lower if c in important else stack).append(c)
        verts = set()
        for s in members:
            verts.update(u.nodes[s].bag)
        degree = len(lower) + (parent is not None)
        if degree == 0:
            out.v_0.update(verts)
        elif degree == 1 and parent is not None:
            out.tassels.setdefault(parent, set()).update(verts)
        elif degree == 2 and parent is not None:
            out.combs.append(_make_comb(g, ix, top, parent, lower[0]))
        else:
            raise InternalStructureError(
                f"component below node {parent} touches {degree} important nodes"
            )
    return out


def _make_comb(g: Graph, ix: UcdIndex, top: int, b_up: int, b_down: int) -> Comb:
    u = ix.u
    shaft = []
    prev = b_down
    a = u.nodes[b_down].parent
    teeth = []
    while True:
        shaft.append(a)
        mask = 0
        for c in u.nodes[a].children:
            if c != prev:
                mask |= ix.below[c]
        teeth.append(mask)
        if a == top:
            break
        prev, a = a, u.nodes[a].parent
    adj = g.adj
    simple = tuple(all(adj[v] & m == 0 for v in iter_bits(m)) for m in teeth)
    q = set()
    for a in shaft:
        q.update(u.nodes[a].bag)
    return Comb(
        shaft=tuple(shaft),
        top=b_up,
        bottom=b_down,
        teeth=tuple(frozenset(iter_bits(m)) for m in teeth),
        shaft_vertices=frozenset(q),
        simple=simple,
    )


# -- Rule 5 ----------------------------------------------------------------


def rule5_index(comb: Comb, k: int) -> Optional[tuple[int, str]]:
    """1-based tooth index to remove and the case used, or ``None``.

    Case ``"i"``: at least ``4k+3`` complicated teeth, remove the last one.
    Case ``"ii"``: remove the last tooth of the earliest run of ``4k+3``
    consecutive simple teeth.
    """
    run_len = 4 * k + 3
    d = comb.length
    if d < run_len * run_len:
        return None
    if sum(1 for s in comb.simple if not s) >= run_len:
        return d, "i"
    run = 0
    for i, s in enumerate(comb.simple, start=1):
        run = run + 1 if s else 0
        if run == run_len:
            return i, "ii"
    raise InternalStructureError("long comb without a qualifying run of simple teeth")


def rule5_comb(inst: Instance, comb: Comb) -> Optional[Instance]:
    hit = rule5_index(comb, inst.k)
    if hit is None:
        return None
    beta, _ = hit
    return Instance(inst.g.remove_vertices(comb.teeth[beta - 1])[0], inst.k)


@dataclass
class Anatomy:
    """Everything the driver learns from one structural pass."""

    modulator: Modulator
    ucd: UcdForest
    types: dict[int, NeighborhoodType]
    important: ImportantBags
    partition: Partition


def analyze(inst: Instance) -> Union[Anatomy, NoInstance]:
    mod = build_modulator(inst)
    if isinstance(mod, NoInstance):
        return mod
    g = inst.g
    rest = [v for v in range(g.n) if v not in mod.x]
    u = build_ucd(g, rest)
    ix = UcdIndex(u)
    types = {x: classify_vertex_type(g, ix, x) for x in sorted(mod.x)}
    imp = mark_important_bags(u, types)
    part = partition_remainder(g, ix, imp)
    return Anatomy(mod, u, types, imp, part)
