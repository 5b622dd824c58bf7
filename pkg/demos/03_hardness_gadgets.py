"""The 3SAT reduction, assembled and checked by hand.

Each variable becomes a cycle with a pendant "paw" vertex per occurrence,
and each clause becomes a single vertex wired to its three literals.  A
satisfying assignment tells us which cycle edges and clause edges to
delete; what remains splits into paws and crickets, both trivially perfect.

Run with ``python demos/03_hardness_gadgets.py``.
"""

from tpkernel import Pair, apply_edits, cycle_graph, is_trivially_perfect, optimal_editsets
from tpkernel import Graph, solve_branching
from tpkernel.sat import (
    CnfFormula,
    assignment_editset,
    component_census,
    normalize,
    reduce,
    satisfying_assignments,
    verify_instance,
)

f = normalize(CnfFormula(3, ((1, 2, 3), (-1, -2, -3))))
inst = reduce(f)
rep = verify_instance(inst)
print(f"two clauses -> n={rep.n}, m={rep.m}, k={rep.k}, max degree {rep.max_degree}, ok={rep.ok}")

for alpha in satisfying_assignments(f):
    fa = assignment_editset(f, inst, alpha)
    edited = apply_edits(inst.g, fa)
    bits = "".join("1" if alpha[x] else "0" for x in range(1, 4))
    print(f"  assignment {bits}: {len(fa)} deletions, TP={is_trivially_perfect(edited)},"
          f" pieces {component_census(edited)}")

# The exact solver confirms the budget is tight on this small instance.
print("solver at k=10:", solve_branching(inst.g, 10).status)
print("solver at k=9: ", solve_branching(inst.g, 9).status)

# Why the budget is tight: the variable cycle C_{3p} needs p edits and the
# cheap ways are the every-third-edge deletions.
c6 = cycle_graph(6)
print("\noptimal edits of C6:", [sorted(tuple(p) for p in s) for s in optimal_editsets(c6, 2)])

# The subdivided claw needs two edits, both at the centre.
claw = Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
best = optimal_editsets(claw, 2)
print("optimal edits of the subdivided claw:",
      [sorted(tuple(p) for p in s) for s in best])
assert all(all(0 in p for p in s) for s in best)
assert Pair.of(1, 0) in best[0] or Pair.of(0, 3) in best[0]
