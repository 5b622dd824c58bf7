"""Recognising trivially perfect graphs and reading their structure.

A graph is trivially perfect when no four vertices induce a path P4 or a
cycle C4.  Such graphs are exactly those that peel into a rooted forest of
cliques: every connected component has a universal clique on top, and
removing it splits the rest into smaller components.  This walk-through
builds a few graphs, asks for that forest, and shows what breaks when an
obstruction is present.

Run with ``python demos/01_recognition_and_decomposition.py``.
"""

import random

from tpkernel import (
    Graph,
    NotTriviallyPerfectError,
    alpha_tp,
    apply_edits,
    build_md,
    build_ucd,
    cycle_graph,
    find_obstruction,
    preceq,
    random_tp_graph,
    ucd_to_graph,
)


def show_forest(u, indent="  "):
    def walk(t, depth):
        node = u.nodes[t]
        print(f"{indent}{'  ' * depth}node {t}: bag {list(node.bag)}")
        for c in node.children:
            walk(c, depth + 1)

    for r in u.roots:
        walk(r, 0)


# A small hand-made example: a hub joined to two triangles and a pendant.
bowtie = Graph(6, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5)])
print("bowtie with a pendant")
u = build_ucd(bowtie)
show_forest(u)
# The hub sits in the root bag; each wing is a child bag.
print("  hub vs wing vertex:", preceq(u, 0, 3))
print("  two wings:", preceq(u, 1, 3))
alpha, witness = alpha_tp(bowtie)
print(f"  independence number {alpha}, e.g. {witness}")
assert ucd_to_graph(u) == bowtie

# The square is the smallest graph that is not trivially perfect.
c4 = cycle_graph(4)
try:
    build_ucd(c4)
except NotTriviallyPerfectError as e:
    print("\nC4 has no decomposition; witness", e.witness.kind, e.witness.vertices)

# One chord repairs it: the diamond peels via its two universal vertices.
diamond = apply_edits(c4, [(0, 2)])
print("after adding chord 0-2:")
show_forest(build_ucd(diamond))

# Random trivially perfect graphs come from random clique forests, so the
# roundtrip graph -> forest -> graph is exact.
rng = random.Random(2024)
g = random_tp_graph(25, rng)
u = build_ucd(g)
print(f"\nrandom TP graph: n={g.n}, m={g.num_edges()}, {len(u.nodes)} bags, {len(u.roots)} trees")
assert ucd_to_graph(u) == g

# Perturb it with a few random toggles and look for an obstruction.
noisy = apply_edits(g, [(0, 7), (3, 11), (5, 20)])
w = find_obstruction(noisy)
print("after three toggles:", "still TP" if w is None else f"{w.kind} on {w.vertices}")

# Modular decomposition gives the module tree that the module rule searches.
t = build_md(g)
kinds = {}
for node in t.nodes:
    kinds[node.kind] = kinds.get(node.kind, 0) + 1
print("modular decomposition node kinds:", kinds)
