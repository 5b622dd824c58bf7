"""Brute-force reference answers for small graphs.

Nothing here calls into the library beyond reading ``Graph.n`` and
``Graph.adj``, so these serve as independent oracles.
"""

from __future__ import annotations

from itertools import combinations


def edges_of(g) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if g.adj[u] >> v & 1]


def _is_obstruction(adj, quad) -> bool:
    # P4 has degree sequence 1,1,2,2 and C4 is 2,2,2,2; both have 3 or 4 edges
    degs = sorted(sum(1 for w in quad if w != v and adj[v] >> w & 1) for v in quad)
    return degs == [1, 1, 2, 2] or degs == [2, 2, 2, 2]


def brute_is_tp(g) -> bool:
    return not any(_is_obstruction(g.adj, q) for q in combinations(range(g.n), 4))


def brute_alpha(g) -> int:
    adj = g.adj

    def best(cand: int) -> int:
        if not cand:
            return 0
        v = (cand & -cand).bit_length() - 1
        rest = cand & ~(1 << v)
        take = 1 + best(rest & ~adj[v])
        if not rest & adj[v]:
            return take  # v has no neighbour left, taking it is optimal
        return max(take, best(rest))

    return best((1 << g.n) - 1)


def brute_matching_size(edges: list[tuple[int, int]]) -> int:
    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        u, v = edges[i]
        skip = best(i + 1, used)
        if used >> u & 1 or used >> v & 1:
            return skip
        return max(skip, 1 + best(i + 1, used | 1 << u | 1 << v))

    return best(0, 0)


def brute_modules(g) -> set[frozenset]:
    """All non-empty modules."""
    n = g.n
    adj = g.adj
    out = set()
    for s in range(1, 1 << n):
        ok = True
        for v in range(n):
            if s >> v & 1:
                continue
            seen = adj[v] & s
            if seen and seen != s:
                ok = False
                break
        if ok:
            out.add(frozenset(v for v in range(n) if s >> v & 1))
    return out


def brute_twin_classes(g) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v] | 1 << v, []).append(v)
    return list(groups.values())


def components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    out: dict[int, list[int]] = {}
    for v in range(n):
        out.setdefault(find(v), []).append(v)
    return list(out.values())


def brute_obstructions(g) -> list[tuple[int, ...]]:
    return [q for q in combinations(range(g.n), 4) if _is_obstruction(g.adj, q)]


def brute_is_modulator(g, x) -> bool:
    """Every obstruction meets ``x`` in two or more vertices, avoiding the two bad shapes.

    The bad shapes are a P4 ``x1-y1-y2-x2`` with both ends in ``x`` and a
    C4 ``x1-y1-y2-x2-x1``; in both the two outside vertices are adjacent.
    """
    xs = set(x)
    adj = g.adj
    for q in brute_obstructions(g):
        inside = [v for v in q if v in xs]
        if len(inside) <= 1:
            return False
        if len(inside) == 2:
            y1, y2 = [v for v in q if v not in xs]
            x1, x2 = inside
            if not adj[y1] >> y2 & 1:
                continue
            degs = sorted(sum(1 for w in q if w != v and adj[v] >> w & 1) for v in q)
            if degs == [2, 2, 2, 2]:
                return False
            if (adj[x1] >> y1 & 1) != (adj[x1] >> y2 & 1) and (adj[x2] >> y1 & 1) != (adj[x2] >> y2 & 1):
                # both x vertices are path ends, one on each side of y1y2
                return False
    return True
