"""
Weight families for p > q
=========================

When p > q the maximally untwisted q-cohomological weights are produced by
stacking twists and shifts.  This script prints the families for q <= 4,
their polynomial forms in p, and compares the expansion with the engine.
"""

from sl2coh import DimCache, cross_check_wq, expand, wq_families
from sl2coh.families import symbolic_branches, render

for q in range(1, 5):
    print(f"--- W{q}")
    for fam in wq_families(q):
        print(fam)
        for cond, s in symbolic_branches(fam):
            print("   ", render(s), cond or "")

###############################################################################
# Concrete values at p = 7 and the engine cross-check.
print(expand(wq_families(3), 7, 5000).concrete)

cache = DimCache()
for q, p in [(3, 5), (4, 5), (4, 7)]:
    rep = cross_check_wq(q, p, 10**4, cache)
    print(f"q={q} p={p}: {rep.status}, {len(rep.actual)} weights")
