"""Long-comb instances on which the comb rule can fire.

A caterpillar-shaped TP graph (root, long shaft, random small teeth, a
two-leaf bottom node) is perturbed so that the greedy modulator marks the
root and the bottom node as important, leaving the shaft as one comb.
"""

from __future__ import annotations

import random

from tpkernel import Graph, apply_edits


def caterpillar(d: int, rng: random.Random, complicated: float):
    """Edges and named nodes of the caterpillar with ``d`` shaft nodes.

    Returns ``(n, edges, root_path, bottom_path)`` where the paths list the
    vertices from the root down to the root bag and to the bottom bag.
    """
    edges = []
    n = 0
    parent_path: list[int] = []

    def bag(size, above):
        nonlocal n
        vs = list(range(n, n + size))
        n += size
        for i, v in enumerate(vs):
            edges.extend((v, w) for w in vs[i + 1:])
            edges.extend((v, w) for w in above)
        return vs

    root = bag(1, [])
    bag(1, root)  # second child of the root
    path = list(root)
    for _ in range(d):
        shaft = bag(rng.choice([1, 1, 2]), path)
        path = path + shaft
        if rng.random() < complicated:
            # K2 tooth, or a P3-shaped cherry
            if rng.random() < 0.5:
                bag(2, path)
            else:
                top = bag(1, path)
                bag(1, path + top)
                bag(1, path + top)
        else:
            bag(1, path)
    bottom = bag(1, path)
    bottom_path = path + bottom
    bag(1, bottom_path)
    bag(1, bottom_path)
    return n, edges, list(root), bottom_path


def comb_instance(d: int, seed: int, complicated: float = 0.3) -> Graph:
    """Caterpillar plus a P4 of new vertices seeing the root and the bottom path."""
    rng = random.Random(seed)
    n, edges, root_path, bottom_path = caterpillar(d, rng, complicated)
    # y-vertices get ids after the caterpillar; y1-y2-y3-y4 is an induced P4
    y = [n, n + 1, n + 2, n + 3]
    edges += [(y[0], y[1]), (y[1], y[2]), (y[2], y[3])]
    for v in (y[0], y[3]):
        edges += [(v, w) for w in root_path]
    for v in (y[1], y[2]):
        edges += [(v, w) for w in bottom_path]
    return _relabel(Graph(n + 4, edges), y, rng)


def planted_comb_instance(d: int, seed: int, complicated: float = 0.3) -> Graph:
    """A TP caterpillar with leaves under the root and the bottom bag, joined by one added edge.

    Deleting that edge restores a TP graph, so the instance is solvable with
    budget 1.
    """
    rng = random.Random(seed)
    n, edges, root_path, bottom_path = caterpillar(d, rng, complicated)
    y = [n, n + 1]
    edges += [(y[0], w) for w in root_path]
    edges += [(y[1], w) for w in bottom_path]
    g = apply_edits(Graph(n + 2, edges), [(y[0], y[1])])
    return _relabel(g, y, rng)


def _relabel(g: Graph, first: list[int], rng: random.Random) -> Graph:
    """Give ``first`` the smallest ids and shuffle the rest."""
    rest = [v for v in range(g.n) if v not in set(first)]
    rng.shuffle(rest)
    perm = {old: new for new, old in enumerate(first + rest)}
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
