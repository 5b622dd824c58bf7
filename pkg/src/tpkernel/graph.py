"""Simple undirected graphs over dense integer vertex ids.

Adjacency is stored as one Python ``int`` per vertex used as a bitset, so
neighbourhood algebra (intersections and containment) is a handful
of machine-word operations per 64 vertices.  Graphs are immutable; every
modifying operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class InvalidPairError(ValueError):
    """Raised for pairs with equal endpoints or endpoints out of range."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Pair(NamedTuple):
    """Unordered vertex pair stored as ``(min, max)``; build it with :meth:`of`."""

    u: int
    v: int

    @classmethod
    def of(cls, u: int, v: int) -> "Pair":
        if u == v:
            raise InvalidPairError(f"pair endpoints must differ, got {u}")
        return cls(u, v) if u < v else cls(v, u)


EditSet = frozenset  # frozenset[Pair]


def edit_set(pairs: Iterable[Sequence[int]]) -> frozenset:
    """Canonicalise an iterable of 2-sequences into a frozenset of :class:`Pair`."""
    return frozenset(Pair.of(p[0], p[1]) for p in pairs)


@dataclass(frozen=True)
class Obstruction:
    """An induced P4 (path order) or C4 (cycle order) on four vertices."""

    vertices: tuple[int, int, int, int]
    kind: str  # "P4" or "C4"

    def pairs(self) -> list[Pair]:
        a = self.vertices
        return [Pair.of(a[i], a[j]) for i in range(4) for j in range(i + 1, 4)]

    def is_valid_in(self, g: "Graph") -> bool:
        a, b, c, d = self.vertices
        if len({a, b, c, d}) != 4:
            return False
        path = g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d)
        chords = g.has_edge(a, c) or g.has_edge(b, d)
        if self.kind == "P4":
            return path and not chords and not g.has_edge(a, d)
        if self.kind == "C4":
            return path and not chords and g.has_edge(a, d)
        return False


class Graph:
    """Immutable simple undirected graph on vertices ``0 .. n-1``.

    ``labels`` is optional per-vertex text used only by file IO and the
    SAT reduction; algorithms never read it, and it does not take part in
    equality.
    """

    __slots__ = ("_adj", "_labels", "_hash")

    def __init__(
        self,
        n: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Optional[Sequence[Optional[str]]] = None,
    ) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        for e in edges:
            u, v = e[0], e[1]
            _check_pair(n, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj: tuple[int, ...] = tuple(adj)
        self._labels = _check_labels(n, labels)
        self._hash: Optional[int] = None

    @classmethod
    def from_bitsets(
        cls, adj: Sequence[int], labels: Optional[Sequence[Optional[str]]] = None
    ) -> "Graph":
        """Wrap already-symmetric, loop-free bitset rows without copying edges."""
        g = cls.__new__(cls)
        g._adj = tuple(adj)
        g._labels = _check_labels(len(g._adj), labels)
        g._hash = None
        return g

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def adj(self) -> tuple[int, ...]:
        """Open-neighbourhood bitsets, indexed by vertex."""
        return self._adj

    @property
    def labels(self) -> Optional[tuple[Optional[str], ...]]:
        return self._labels

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def closed(self, v: int) -> int:
        """Closed neighbourhood of ``v`` as a bitset."""
        return self._adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self._adj), default=0)

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self._adj) // 2

    def edges(self) -> Iterator[Pair]:
        """Edges in canonical lexicographic order."""
        for u, row in enumerate(self._adj):
            for v in iter_bits(row >> (u + 1)):
                yield Pair(u, u + 1 + v)

    def non_edges(self) -> Iterator[Pair]:
        full = self.all_mask
        for u, row in enumerate(self._adj):
            free = ~row & full & ~((1 << (u + 1)) - 1)
            for v in iter_bits(free):
                yield Pair(u, v)

    # -- derived graphs -------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``vertices`` renumbered densely by old id.

        Returns the graph and the old-to-new id map.
        """
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise InvalidPairError(f"vertex {v} out of range for n={self.n}")
        remap = {old: new for new, old in enumerate(keep)}
        if len(keep) == self.n:
            return self, remap
        gone = self.n - len(keep)
        if gone <= 32:
            # squeeze out the few dropped bit positions, highest first
            dropped = sorted(set(range(self.n)) - set(keep), reverse=True)
            rows = []
            for old in keep:
                row = self._adj[old]
                for d in dropped:
                    row = (row & ((1 << d) - 1)) | ((row >> (d + 1)) << d)
                rows.append(row)
        else:
            keep_mask = bits_of(keep)
            rows = []
            for old in keep:
                row = 0
                for w in iter_bits(self._adj[old] & keep_mask):
                    row |= 1 << remap[w]
                rows.append(row)
        labels = None
        if self._labels is not None:
            labels = [self._labels[old] for old in keep]
        return Graph.from_bitsets(rows, labels), remap

    def remove_vertices(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        gone = set(vertices)
        return self.induced(v for v in range(self.n) if v not in gone)

    def complement(self) -> "Graph":
        full = self.all_mask
        rows = [~row & full & ~(1 << v) for v, row in enumerate(self._adj)]
        return Graph.from_bitsets(rows, self._labels)

    def with_labels(self, labels: Optional[Sequence[Optional[str]]]) -> "Graph":
        return Graph.from_bitsets(self._adj, labels)

    def components(self, mask: Optional[int] = None) -> list[int]:
        """Connected components of the subgraph induced by ``mask`` (bitsets).

        Ordered by smallest vertex.
        """
        remaining = self.all_mask if mask is None else mask
        out = []
        adj = self._adj
        while remaining:
            start = remaining & -remaining
            comp = start
            frontier = start
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= adj[v]
                reach &= remaining & ~comp
                comp |= reach
                frontier = reach
            out.append(comp)
            remaining &= ~comp
        return out

    # -- value semantics -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise InvalidPairError(f"pair ({u}, {v}) out of range for n={n}")
    if u == v:
        raise InvalidPairError(f"self-loop at vertex {u}")


def _check_labels(n, labels):
    if labels is None:
        return None
    labels = tuple(labels)
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    return labels


# ---------------------------------------------------------------------------
# named small graphs used across tests, demos and the reduction


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n)


def star_graph(leaves: int) -> Graph:
    """Vertex 0 is the centre."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph.from_bitsets(rows)


# ---------------------------------------------------------------------------
# operations


def apply_edits(g: Graph, f: Iterable[Sequence[int]]) -> Graph:
    """Return ``g`` with every pair of ``f`` toggled (symmetric difference)."""
    rows = list(g.adj)
    n = g.n
    for p in f:
        u, v = p[0], p[1]
        _check_pair(n, u, v)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
    return Graph.from_bitsets(rows, g.labels)


def _edge_obstruction(g: Graph, u: int, v: int, mask: int) -> Optional[Obstruction]:
    adj = g.adj
    nu = (adj[u] | 1 << u) & mask
    nv = (adj[v] | 1 << v) & mask
    a_side = nu & ~nv
    b_side = nv & ~nu
    if not a_side or not b_side:
        return None
    a = lowest_bit(a_side)
    b = lowest_bit(b_side)
    if adj[a] >> b & 1:
        return Obstruction((a, u, v, b), "C4")
    return Obstruction((a, u, v, b), "P4")


def bad_edges(g: Graph, mask: Optional[int] = None) -> list[Pair]:
    """Edges ``uv`` of ``g[mask]`` whose closed neighbourhoods are not nested.

    A graph is trivially perfect exactly when this list is empty; each bad
    edge is the middle edge of an induced P4 or an edge of an induced C4.
    """
    if mask is None:
        mask = g.all_mask
    adj = g.adj
    out = []
    for u in iter_bits(mask):
        nu = (adj[u] | 1 << u) & mask
        for v in iter_bits(adj[u] & mask & ~((2 << u) - 1)):
            nv = (adj[v] | 1 << v) & mask
            if nu & ~nv and nv & ~nu:
                out.append(Pair(u, v))
    return out


def find_obstruction_in(
    g: Graph, mask: Optional[int] = None, candidates: Optional[Iterable[Pair]] = None
) -> Optional[Obstruction]:
    """First obstruction of ``g[mask]`` found by scanning edges in order.

    ``candidates`` optionally restricts the scan to a superset of the bad
    edges of ``g[mask]`` (bad edges of ``g`` itself always qualify).
    """
    if mask is None:
        mask = g.all_mask
    if candidates is None:
        adj = g.adj
        for u in iter_bits(mask):
            for v in iter_bits(adj[u] & mask & ~((2 << u) - 1)):
                w = _edge_obstruction(g, u, v, mask)
                if w is not None:
                    return w
        return None
    for u, v in candidates:
        if mask >> u & 1 and mask >> v & 1:
            w = _edge_obstruction(g, u, v, mask)
            if w is not None:
                return w
    return None


def find_obstruction(g: Graph) -> Optional[Obstruction]:
    """Some induced P4 or C4 of ``g``, or ``None`` if ``g`` is trivially perfect.

    Edges are scanned in canonical order; the first edge ``uv`` with
    non-nested closed neighbourhoods yields ``a-u-v-b`` where ``a`` and ``b``
    are the smallest private neighbours of ``u`` and ``v``.
    """
    return find_obstruction_in(g)


@dataclass(frozen=True)
class ModulatorViolation:
    """Witness that a vertex set is not a TP-modulator.

    ``case`` is ``"at-most-one"`` when the obstruction meets the set in at
    most one vertex, ``"forbidden-pair"`` when it meets it in exactly two
    vertices ``x1, x2`` arranged as ``x1-y1-y2-x2`` (P4 or C4).
    """

    obstruction: Obstruction
    case: str


def find_obstruction_avoiding(
    g: Graph, x: Iterable[int], bad: Optional[Sequence[Pair]] = None
) -> Optional[ModulatorViolation]:
    """Witness that ``x`` is not a TP-modulator of ``g``, or ``None`` if it is.

    ``bad`` may pass precomputed :func:`bad_edges` of ``g`` to skip the
    full edge scan.
    """
    xs = sorted(set(x))
    xmask = bits_of(xs)
    rest = g.all_mask & ~xmask
    if bad is None:
        bad = bad_edges(g)
    w = find_obstruction_in(g, rest, bad)
    if w is not None:
        return ModulatorViolation(w, "at-most-one")
    for xv in xs:
        w = find_obstruction_in(g, rest | 1 << xv, bad)
        if w is not None:
            return ModulatorViolation(w, "at-most-one")
    if not xmask:
        return None
    # the pattern x1-y1-y2-x2 makes y1y2 a bad edge of g, so only those are scanned
    adj = g.adj
    for y1, y2 in bad:
        if not (rest >> y1 & 1 and rest >> y2 & 1):
            continue
        a = adj[y1] & xmask
        b = adj[y2] & xmask
        if a & ~b and b & ~a:
            x1 = lowest_bit(a & ~b)
            x2 = lowest_bit(b & ~a)
            kind = "C4" if adj[x1] >> x2 & 1 else "P4"
            return ModulatorViolation(Obstruction((x1, y1, y2, x2), kind), "forbidden-pair")
    return None


def true_twin_classes(g: Graph) -> list[list[int]]:
    """Maximal sets of vertices with equal closed neighbourhoods, by smallest member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.closed(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_module(g: Graph, m: Iterable[int]) -> bool:
    """True iff all vertices of ``m`` see the same vertices outside ``m``."""
    members = list(m)
    if len(members) <= 1:
        return True
    mmask = bits_of(members)
    adj = g.adj
    outside = adj[members[0]] & ~mmask
    return all(adj[v] & ~mmask == outside for v in members[1:])


def complement_induced(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Complement of ``g[s]`` renumbered densely, with the old-to-new id map."""
    h, remap = g.induced(s)
    return h.complement(), remap
