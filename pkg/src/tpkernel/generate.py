"""Random trivially perfect graphs and planted instances.

TP graphs are sampled as UCD forests: a block of vertices takes a
geometric-size bag and splits the rest into at least two child blocks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, Pair, apply_edits, iter_bits
from .problem import Instance, Mode


def random_tp_graph(
    n: int,
    rng: random.Random,
    bag_p: float = 0.5,
    max_children: int = 4,
    components: Optional[int] = None,
) -> Graph:
    """A random TP graph on ``n`` vertices with shuffled vertex ids.

    Bag sizes are geometric with success probability ``bag_p``; every
    internal node gets between 2 and ``max_children`` children.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    order = list(range(n))
    rng.shuffle(order)
    rows = [0] * n

    def geometric() -> int:
        s = 1
        while rng.random() > bag_p:
            s += 1
        return s

    def split(block: list[int], parts: int) -> list[list[int]]:
        cuts = sorted(rng.sample(range(1, len(block)), parts - 1))
        bounds = [0] + cuts + [len(block)]
        return [block[a:b] for a, b in zip(bounds, bounds[1:])]

    # explicit stack: blocks are (vertices, mask of ancestors' bags)
    if components is None:
        components = 1 if n == 1 else rng.randint(1, min(3, n))
    stack = [(b, 0) for b in split(order, min(components, n))]
    while stack:
        block, above = stack.pop()
        size = min(geometric(), len(block))
        if len(block) - size == 1:
            size += 1
        bag = block[:size]
        rest = block[size:]
        bag_mask = 0
        for v in bag:
            bag_mask |= 1 << v
        for v in bag:
            rows[v] |= above | (bag_mask & ~(1 << v))
        for v in iter_bits(above):
            rows[v] |= bag_mask
        if rest:
            parts = rng.randint(2, min(max_children, len(rest)))
            for child in split(rest, parts):
                stack.append((child, above | bag_mask))
    return Graph.from_bitsets(rows)


@dataclass(frozen=True)
class Planted:
    instance: Instance
    planted: frozenset
    tp: Graph


def gen_planted(
    n: int, k: int, seed: int, mode: Mode = Mode.EDITING, **tp_options
) -> Planted:
    """A random TP graph perturbed by ``k`` edits that the mode may undo.

    ``apply_edits(instance.g, planted)`` is the TP graph, so the instance is
    feasible at budget ``k``.  Fewer than ``k`` pairs are planted only when
    the graph has too few legal pairs.
    """
    mode = Mode.parse(mode)
    rng = random.Random(seed)
    tp = random_tp_graph(n, rng, **tp_options)
    if mode is Mode.DELETION:
        # solver deletes, so the perturbation adds non-edges of the TP graph
        pool = list(tp.non_edges())
    elif mode is Mode.COMPLETION:
        pool = list(tp.edges())
    else:
        pool = None
    total = n * (n - 1) // 2
    picked: set[Pair] = set()
    want = min(k, total if pool is None else len(pool))
    while len(picked) < want:
        if pool is None:
            u, v = rng.sample(range(n), 2)
            picked.add(Pair.of(u, v))
        else:
            picked.add(pool[rng.randrange(len(pool))])
    planted = frozenset(picked)
    g = apply_edits(tp, sorted(planted))
    return Planted(Instance(g, k), planted, tp)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
