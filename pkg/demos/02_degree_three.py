"""
Degree three: closed forms against the engine
=============================================

For p > 2 the third cohomology is supported on seven families of weights.
``verify_theorem_a`` types those families in by hand and compares them with
a full scan.  At p = 2 the scan turns up one extra family,
2^(m+n+2) + 2^(m+3) + 2 with m >= 1 and n >= 3, which the hand-written list
does not contain.
"""

from sl2coh import DimCache, h_dim, scan_untwisted, verify_theorem_a

cache = DimCache()

for p in (3, 5, 7, 2):
    for rep in verify_theorem_a(p, 10**4, cache):
        extra = rep.unexpected[:8]
        print(f"p={p} {rep.name}: {rep.status}", f"extra {extra}" if extra else "")

###############################################################################
# The maximally untwisted degree-3 weights at p = 5 below 300:
# 4p-2, 2p^2-4p, 2p^2+2p-2, 2p^3-2p^2-2p-2, p^2(2p-2)+2p, p^2*2p+2p-2.
print([r.lam for r in scan_untwisted(3, 5, 300, cache).rows])

###############################################################################
# Where the p = 2 extras come from: H^3(L(82)) picks up
# Ext^2(Delta(1), L(41)) = H^2(L(20)), and 20 is a twist of 10 = 2^3 + 2.
print("H^2(L(20)) =", h_dim(2, 20, 2, cache), " H^3(L(82)) =", h_dim(3, 82, 2, cache))
