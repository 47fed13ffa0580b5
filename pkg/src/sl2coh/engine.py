"""Memoized computation of ``dim Ext^q(Delta(r), L(lam))`` for SL2.

The recursion peels one base-p digit off both ``r`` and ``lam`` at a time:

* ``q = 0``: the Hom space is one dimensional exactly when ``lam == r``;
* weights that are not linked contribute nothing;
* when the low digit of ``r`` is ``p - 1`` the Steinberg factor cancels and
  the problem moves one Frobenius layer up unchanged;
* otherwise the low digit of ``lam`` is either ``r0`` or ``p - 2 - r0`` and
  the Ext group splits as a direct sum over even (resp. odd) ``n`` of
  ``Ext^{q-n}(Delta(n + r'), L(lam'))``.  For ``p = 2`` both parities
  collapse into one sum over every ``n``.

Every child key is strictly smaller than its parent in the lexicographic order
on ``(q, lam, r)``, which is what makes the recursion terminate.  Evaluation
uses an explicit stack, so deep weights (hundreds of digits) are fine.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, TextIO

from .weights import Prime, is_linked

__all__ = [
    "DimCache",
    "CacheConflict",
    "CacheFormatError",
    "CacheVersionError",
    "CacheIntegrityError",
    "CACHE_HEADER",
    "ext_dim",
    "h_dim",
    "is_maximally_untwisted",
    "default_cache",
    "cache_save",
    "cache_load",
    "write_cache",
    "read_cache",
    "verify_cache",
    "dumps_cache",
    "loads_cache",
    "union",
]

CACHE_HEADER = "sl2coh-cache v1"
_HEADER_PREFIX = "sl2coh-cache "


class CacheConflict(ValueError):
    """Two caches disagree on the value of one key."""


class CacheFormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CacheVersionError(CacheFormatError):
    pass


class CacheIntegrityError(CacheFormatError):
    def __init__(self, key, stored, recomputed):
        self.key = key
        self.stored = stored
        self.recomputed = recomputed
        p, q, r, lam = key
        super().__init__(
            f"cache entry p={p} q={q} r={r} lambda={lam} stores dim {stored}, "
            f"recomputation gives {recomputed}"
        )


class DimCache:
    """Map from ``(p, q, r, lam)`` to ``dim Ext^q(Delta(r), L(lam))``.

    Only finished values are ever stored.  Two caches can be combined with
    :meth:`merge`, which refuses to overwrite a key with a different value.
    """

    def __init__(self, entries=None):
        self.entries: dict[tuple[int, int, int, int], int] = dict(entries or {})
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def __eq__(self, other):
        if not isinstance(other, DimCache):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"<DimCache {len(self.entries)} entries, {self.hits} hits, {self.misses} misses>"

    def get(self, key, default=None):
        return self.entries.get(key, default)

    def merge(self, other: "DimCache") -> "DimCache":
        mine = self.entries
        for key, value in other.entries.items():
            old = mine.get(key)
            if old is None:
                mine[key] = value
            elif old != value:
                raise CacheConflict(f"conflicting values for {key}: {old} != {value}")
        return self

    def primes(self):
        return sorted({k[0] for k in self.entries})

    def clear(self):
        self.entries.clear()
        self.hits = self.misses = 0


default_cache = DimCache()


def _measure(key):
    _, q, r, lam = key
    return (q, lam, r)


def _reduce(p, q, r, lam):
    """One step of the recursion: either a final int or a list of summand keys."""
    if q == 0:
        return 1 if lam == r else 0
    if not is_linked(lam, r, p):
        return 0
    if lam == 0 and r == 0:
        return 0
    r1, r0 = divmod(r, p)
    l1, l0 = divmod(lam, p)
    if p == 2:
        if r0 == 1:
            # L(1) is the Steinberg module; linkage forces an odd lam
            assert l0 == 1
            return [(p, q, r1, l1)]
        if l0 == 0:
            return [(p, q - n, r1 + n, l1) for n in range(q + 1)]
        return 0
    if r0 == p - 1:
        assert l0 == p - 1
        return [(p, q, r1, l1)]
    # 2*r0 == p - 2 has no solution for odd p, so at most one branch applies
    assert not (l0 == r0 and l0 == p - 2 - r0)
    if l0 == r0:
        return [(p, q - n, r1 + n, l1) for n in range(0, q + 1, 2)]
    if l0 == p - 2 - r0:
        return [(p, q - n, r1 + n, l1) for n in range(1, q + 1, 2)]
    return 0


def _evaluate(cache: DimCache, root) -> int:
    entries = cache.entries
    value = entries.get(root)
    if value is not None:
        cache.hits += 1
        return value
    stack = [root]
    pending = {}
    while stack:
        key = stack[-1]
        if key in entries:
            stack.pop()
            continue
        children = pending.get(key)
        if children is None:
            cache.misses += 1
            step = _reduce(*key)
            if isinstance(step, int):
                entries[key] = step
                stack.pop()
                continue
            if __debug__:
                m = _measure(key)
                for child in step:
                    assert _measure(child) < m, (key, child)
            pending[key] = step
            missing = [c for c in step if c not in entries]
            if missing:
                stack.extend(missing)
                continue
            children = step
        entries[key] = sum(entries[c] for c in children)
        del pending[key]
        stack.pop()
    return entries[root]


def _check_args(q, r, lam):
    for name, v in (("q", q), ("r", r), ("lambda", lam)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"{name} must be an int")
        if v < 0:
            raise ValueError(f"{name} must be nonnegative, got {v}")


def ext_dim(q: int, r: int, lam: int, p: int, cache: DimCache | None = None) -> int:
    """Dimension of ``Ext^q(Delta(r), L(lam))`` in characteristic ``p``."""
    _check_args(q, r, lam)
    p = int(Prime(p))
    if cache is None:
        cache = default_cache
    return _evaluate(cache, (p, int(q), int(r), int(lam)))


def h_dim(q: int, lam: int, p: int, cache: DimCache | None = None) -> int:
    """Dimension of ``H^q(SL2, L(lam))``."""
    return ext_dim(q, 0, lam, p, cache)


def is_maximally_untwisted(q: int, lam: int, p: int, cache: DimCache | None = None) -> bool:
    if h_dim(q, lam, p, cache) == 0:
        return False
    if lam % p:
        return True
    return h_dim(q, lam // p, p, cache) == 0


# -- cache files -----------------------------------------------------------


def write_cache(cache: DimCache, fp: TextIO) -> int:
    fp.write(CACHE_HEADER + "\n")
    keys = sorted(cache.entries)
    for key in keys:
        p, q, r, lam = key
        fp.write(f"{p} {q} {r} {lam} {cache.entries[key]}\n")
    return len(keys)


def _field(text, name, lineno):
    if not text.isdigit():
        raise CacheFormatError(f"field {name} is not a nonnegative decimal: {text!r}", lineno)
    return int(text)


def read_cache(fp: TextIO, verify: bool = False) -> DimCache:
    cache = DimCache()
    entries = cache.entries
    lines = iter(enumerate(fp, start=1))
    for lineno, line in lines:
        line = line.rstrip("\n")
        if not line.strip():
            continue
        if not line.startswith(_HEADER_PREFIX):
            raise CacheFormatError("missing 'sl2coh-cache' header", lineno)
        if line != CACHE_HEADER:
            raise CacheVersionError(
                f"unsupported cache version {line[len(_HEADER_PREFIX):]!r}, expected v1", lineno
            )
        break
    else:
        return cache
    checked_primes = set()
    for lineno, line in lines:
        line = line.rstrip("\n")
        if not line:
            continue
        parts = line.split(" ")
        if len(parts) != 5:
            raise CacheFormatError(f"expected 5 fields, got {len(parts)}", lineno)
        p, q, r, lam, dim = (
            _field(t, n, lineno) for t, n in zip(parts, ("p", "q", "r", "lambda", "dim"))
        )
        if p not in checked_primes:
            try:
                Prime(p)
            except ValueError as exc:
                raise CacheFormatError(str(exc), lineno) from None
            checked_primes.add(p)
        key = (p, q, r, lam)
        if entries.get(key, dim) != dim:
            raise CacheFormatError(f"duplicate key {key} with different dims", lineno)
        entries[key] = dim
    if verify:
        verify_cache(cache)
    return cache


def verify_cache(cache: DimCache) -> int:
    """Recompute every entry in an independent cache; raise on the first mismatch."""
    fresh = DimCache()
    for key in sorted(cache.entries):
        stored = cache.entries[key]
        got = _evaluate(fresh, key)
        if got != stored:
            raise CacheIntegrityError(key, stored, got)
    return len(cache.entries)


def cache_save(cache: DimCache, destination) -> int:
    """Write ``cache`` to a path atomically; returns the number of entries."""
    destination = os.fspath(destination)
    tmp = destination + ".tmp"
    with open(tmp, "w", encoding="ascii", newline="\n") as fp:
        n = write_cache(cache, fp)
    os.replace(tmp, destination)
    return n


def cache_load(source, verify: bool = False) -> DimCache:
    with open(os.fspath(source), encoding="ascii", newline="\n") as fp:
        return read_cache(fp, verify=verify)


def dumps_cache(cache: DimCache) -> str:
    buf = io.StringIO()
    write_cache(cache, buf)
    return buf.getvalue()


def loads_cache(text: str, verify: bool = False) -> DimCache:
    return read_cache(io.StringIO(text), verify=verify)


def union(caches: Iterable[DimCache]) -> DimCache:
    out = DimCache()
    for c in caches:
        out.merge(c)
    return out
