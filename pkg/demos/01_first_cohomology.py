"""
First cohomology of simple SL2-modules
======================================

H^1(SL2, L(lam)) is nonzero only for lam = 2p - 2 and its Frobenius twists,
and it is always one dimensional.  We check that by brute force over a range
of weights for a few primes.
"""

from sl2coh import DimCache, h_dim, scan_cohomological

cache = DimCache()

###############################################################################
# A single value: the weight 2p - 2 at p = 5 is 8.
print("dim H^1(L(8)) at p=5:", h_dim(1, 8, 5, cache))
print("dim H^1(L(6)) at p=5:", h_dim(1, 6, 5, cache))

###############################################################################
# Scan every weight up to 10^4.  Only the twists p^n (2p - 2) survive.
for p in (2, 3, 5, 7, 11):
    scan = scan_cohomological(1, p, 10**4, cache)
    print(f"p={p:2d}:", [(r.lam, r.dim) for r in scan.rows])

###############################################################################
# The cache now holds every intermediate Ext group that was needed.
print(cache)
