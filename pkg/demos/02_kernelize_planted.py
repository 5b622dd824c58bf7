"""Shrinking planted instances and checking the answer survives.

We hide a trivially perfect graph behind ``k`` edits, hand the result to
the kernelizer, and compare what the exact solver says before and after.
The second half grows ``n`` with ``k`` fixed to show that the reduced
instance stops growing.

Run with ``python demos/02_kernelize_planted.py``.
"""

import time

from tpkernel import Instance, Kernel, Mode, gen_planted, kernelize, solve_branching

# 1. One instance, all three problem variants.
for mode in Mode:
    p = gen_planted(60, 3, seed=7, mode=mode)
    out = kernelize(p.instance, mode)
    direct = solve_branching(p.instance.g, 3, mode)
    if isinstance(out, Kernel):
        reduced = solve_branching(out.g, out.k, mode)
        summary = f"kernel n={out.g.n} k={out.k} rules {out.trace.counts()}"
    else:
        reduced = None
        summary = f"no-instance ({out.reason})"
    same = direct.feasible == (reduced is not None and reduced.feasible)
    print(f"{mode.value:>8}: input n=60 k=3 -> {summary}; answers agree: {same}")

# 2. A budget that is too small: the kernelizer may refuse outright, and the
#    solver agrees that no solution exists.
p = gen_planted(40, 4, seed=3)
tight = Instance(p.instance.g, 1)
out = kernelize(tight)
print("\nplanted with 4 edits, budget 1:", type(out).__name__,
      "| direct solve:", solve_branching(tight.g, 1).status)

# 3. Replaying the trace rebuilds the output from the input.
p = gen_planted(80, 2, seed=11)
out = kernelize(p.instance)
g, k = out.trace.replay(p.instance.g, p.instance.k)
print("\ntrace of", len(out.trace), "steps replays exactly:", g == out.g and k == out.k)

# 4. Fixed k, growing n.
print("\nkernel size for k=2 as n grows (editing):")
for n in (100, 400, 1600):
    t0 = time.perf_counter()
    sizes = [kernelize(gen_planted(n, 2, seed).instance).g.n for seed in range(3)]
    print(f"  n={n:5d}: kernel vertices {sizes}  ({time.perf_counter() - t0:.1f}s)")
