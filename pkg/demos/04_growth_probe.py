"""
How large can dim H^q get at p = 2?
===================================

For p > q every cohomology group of a simple module is at most one
dimensional.  At p = 2 that fails already in degree 3, and the maximum keeps
growing with q.  We scan all weights up to 2^16 and print the largest
dimension seen for each degree.  These are lower bounds only.
"""

import time

from sl2coh import DimCache, gamma_lower_bound

cache = DimCache()
start = time.perf_counter()
for q in range(1, 8):
    best, where = gamma_lower_bound(q, 2, 2**16, cache)
    print(f"q={q}: max dim {best:3d} first at lambda={where[0]}")
print(f"{len(cache)} cached Ext groups, {time.perf_counter() - start:.1f}s")
