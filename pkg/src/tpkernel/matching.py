"""Maximum-cardinality matchings.

General graphs use Edmonds' blossom algorithm (BFS with blossom contraction
through a ``base`` array, O(n^3)); the bipartite case uses Kuhn's augmenting
paths.  Both accept a ``threshold`` and stop as soon as the matching reaches
it, which is all the reduction rules need.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .graph import Graph, Pair, bits_of, iter_bits


def _matching_pairs(mate: list[int]) -> frozenset:
    return frozenset(Pair(v, w) for v, w in enumerate(mate) if v < w)


def is_matching(pairs: Iterable[Pair]) -> bool:
    seen: set[int] = set()
    for u, v in pairs:
        if u in seen or v in seen or u == v:
            return False
        seen.update((u, v))
    return True


def max_matching(g: Graph, threshold: Optional[int] = None) -> frozenset:
    """Maximum matching of ``g`` as a frozenset of :class:`Pair`.

    With ``threshold`` set, returns as soon as the matching has that many
    edges (the result is then maximum only if it is smaller).
    """
    n = g.n
    adj = g.adj
    mate = [-1] * n
    size = 0
    for v in range(n):
        if mate[v] == -1:
            for w in iter_bits(adj[v]):
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    size += 1
                    break
    if threshold is not None and size >= threshold:
        return _matching_pairs(mate)

    for root in range(n):
        if mate[root] != -1:
            continue
        end, parent = _augmenting_path(adj, mate, root)
        if end == -1:
            continue
        v = end
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v] = pv
            mate[pv] = v
            v = nxt
        size += 1
        if threshold is not None and size >= threshold:
            break
    return _matching_pairs(mate)


def _augmenting_path(adj, mate, root):
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in iter_bits(adj[v]):
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    return to, parent
                used[mate[to]] = True
                queue.append(mate[to])
    return -1, parent


def max_bipartite_matching(
    g: Graph, a: Iterable[int], b: Iterable[int], threshold: Optional[int] = None
) -> frozenset:
    """Maximum matching using only edges of ``g`` between ``a`` and ``b``.

    Raises ``ValueError`` if the sides overlap.
    """
    left = sorted(set(a))
    right = set(b)
    if right.intersection(left):
        raise ValueError("bipartition sides must be disjoint")
    rmask = bits_of(right)
    adj = g.adj
    match_r: dict[int, int] = {}
    size = 0

    def try_kuhn(u: int, visited: set[int]) -> bool:
        for w in iter_bits(adj[u] & rmask):
            if w in visited:
                continue
            visited.add(w)
            if w not in match_r or try_kuhn(match_r[w], visited):
                match_r[w] = u
                return True
        return False

    for u in left:
        if threshold is not None and size >= threshold:
            break
        if try_kuhn(u, set()):
            size += 1
    return frozenset(Pair.of(u, w) for w, u in match_r.items())
