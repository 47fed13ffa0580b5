"""Bounded scans of cohomological weights and checks against closed forms.

All bounds are inclusive.  Scans only visit the two residue classes mod
``2p`` that can carry nonzero cohomology (0 and -2); every other weight has
vanishing ``H^q`` for ``q >= 1`` by linkage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .engine import DimCache, default_cache, h_dim
from .families import HypothesisViolation, expand, wq_families
from .weights import Prime

__all__ = [
    "Row",
    "ScanResult",
    "CheckReport",
    "linked_weights",
    "scan_cohomological",
    "scan_untwisted",
    "gamma_lower_bound",
    "cross_check_wq",
    "theorem_a_weights",
    "verify_theorem_a",
]


class Row(NamedTuple):
    lam: int
    dim: int
    untwisted: bool


@dataclass
class ScanResult:
    p: int
    q: int
    bound: int
    rows: list[Row] = field(default_factory=list)

    @property
    def weights(self):
        return [r.lam for r in self.rows]

    def as_dict(self):
        return {r.lam: r.dim for r in self.rows}


@dataclass
class CheckReport:
    name: str
    p: int
    q: int
    bound: int
    expected: frozenset
    actual: frozenset
    dim_mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def status(self):
        ok = self.expected == self.actual and not self.dim_mismatches
        return "pass" if ok else "fail"

    @property
    def passed(self):
        return self.status == "pass"

    @property
    def missing(self):
        return sorted(self.expected - self.actual)

    @property
    def unexpected(self):
        return sorted(self.actual - self.expected)


def linked_weights(p: int, bound: int, q: int = 1):
    """Weights ``<= bound`` congruent to 0 or -2 mod 2p, in increasing order."""
    if q == 0:
        if bound >= 0:
            yield 0
        return
    m = 2 * p
    lam = 0
    while lam <= bound:
        yield lam
        if lam + m - 2 <= bound:
            yield lam + m - 2
        lam += m


def _cache(cache):
    return default_cache if cache is None else cache


def scan_cohomological(q: int, p: int, bound: int, cache: DimCache | None = None) -> ScanResult:
    p = int(Prime(p))
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    cache = _cache(cache)
    result = ScanResult(p, q, bound)
    for lam in linked_weights(p, bound, q):
        d = h_dim(q, lam, p, cache)
        if d:
            untwisted = bool(lam % p) or h_dim(q, lam // p, p, cache) == 0
            result.rows.append(Row(lam, d, untwisted))
    return result


def scan_untwisted(q: int, p: int, bound: int, cache: DimCache | None = None) -> ScanResult:
    full = scan_cohomological(q, p, bound, cache)
    full.rows = [r for r in full.rows if r.untwisted]
    return full


def gamma_lower_bound(q: int, p: int, bound: int, cache: DimCache | None = None):
    """Largest ``dim H^q(L(lam))`` over ``lam <= bound`` and the weights attaining it.

    This is only a lower bound for the true maximum over all weights.
    """
    rows = scan_cohomological(q, p, bound, cache).rows
    best = max((r.dim for r in rows), default=0)
    return best, [r.lam for r in rows if r.dim == best] if best else []


def cross_check_wq(q: int, p: int, bound: int, cache: DimCache | None = None) -> CheckReport:
    """Compare the family expansion of W_q with the engine's untwisted scan."""
    p = int(Prime(p))
    if q < 1 or p <= q:
        raise HypothesisViolation(f"cross-check needs p > q >= 1, got p={p}, q={q}")
    expected = frozenset(expand(wq_families(q), p, bound).concrete)
    rows = scan_untwisted(q, p, bound, cache).rows
    actual = frozenset(r.lam for r in rows)
    mismatches = [(r.lam, 1, r.dim) for r in rows if r.dim != 1]
    return CheckReport(f"W{q} families", p, q, bound, expected, actual, mismatches)


# -- closed forms ------------------------------------------------------------
#
# These lists are typed in by hand from the published classification and are
# deliberately not derived from the engine or the family generator.


def _powers(p, bound, start=0):
    """p**n for n >= start while p**n <= bound."""
    x = p**start
    while x <= bound:
        yield x
        x *= p


def _twist_closure(base: dict[int, int], p: int, bound: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for lam, d in base.items():
        if lam == 0:
            continue
        x = lam
        while x <= bound:
            out[x] = max(out.get(x, 0), d)
            x *= p
    return out


def _listed(q, p, bound):
    """Weights named in the classification for degree ``q`` with their dims."""
    listed: dict[int, int] = {}

    def add(lam, d=1):
        if 0 <= lam <= bound:
            listed[lam] = max(listed.get(lam, 0), d)

    if q == 1:
        add(2 * p - 2)
    elif q == 2:
        add(2 * p)
        if p > 2:
            add(2 * p * p - 2 * p - 2)
        for x in _powers(p, bound, 2):
            add(x * (2 * p - 2) + 2 * p - 2)
    elif q == 3 and p == 2:
        add(6)
        add(8)
        for n, x in enumerate(_powers(2, bound), start=0):
            if n > 3:
                add(x + 2)
                add(x + 4, 2 if n > 4 else 1)
            if n > 4:
                add(x + 10)
    elif q == 3:
        add(4 * p - 2)
        if p > 3:
            add(2 * p * p - 4 * p)
        add(2 * p * p + 2 * p - 2)
        add(2 * p**3 - 2 * p * p - 2 * p - 2)
        for n, x in enumerate(_powers(p, bound), start=0):
            if n > 1:
                add(x * (2 * p - 2) + 2 * p)
            if n > 2:
                add(x * (2 * p - 2) + 2 * p * p - 2 * p - 2)
        two_coh = _twist_closure(_listed(2, p, bound), p, bound)
        for n, x in enumerate(_powers(p, bound), start=0):
            if n > 1:
                for lam2 in two_coh:
                    add(x * lam2 + 2 * p - 2)
    else:
        raise ValueError(f"no closed form recorded for degree {q}")
    return listed


def theorem_a_weights(q: int, p: int, bound: int) -> dict[int, int]:
    """All ``q``-cohomological weights ``<= bound`` predicted by the closed forms.

    Covers ``q`` in 1, 2, 3.  Frobenius twists of listed weights are included
    and inherit the dimension of the weight they twist.
    """
    p = int(Prime(p))
    return _twist_closure(_listed(q, p, bound), p, bound)


def verify_theorem_a(p: int, bound: int, cache: DimCache | None = None) -> list[CheckReport]:
    p = int(Prime(p))
    reports = []
    for q in (1, 2, 3):
        expected = theorem_a_weights(q, p, bound)
        actual = scan_cohomological(q, p, bound, cache).as_dict()
        mismatches = [
            (lam, expected[lam], actual[lam])
            for lam in sorted(expected.keys() & actual.keys())
            if expected[lam] != actual[lam]
        ]
        reports.append(
            CheckReport(
                f"H{q} classification",
                p,
                q,
                bound,
                frozenset(expected),
                frozenset(actual),
                mismatches,
            )
        )
    return reports
