"""Arithmetic on dominant weights of SL2 in characteristic p.

Dominant weights are identified with the nonnegative integers, so a weight is
just a Python ``int``.  The helpers here cover the p-adic digit split used by
the tensor product theorem, the linkage test, Frobenius twists and the shift
operator ``lam || n``.
"""

from __future__ import annotations

from typing import NamedTuple

__all__ = [
    "Prime",
    "DigitSplit",
    "PreconditionViolation",
    "decompose",
    "padic_digits",
    "from_digits",
    "is_linked",
    "linked_to_zero",
    "shift",
    "frobenius_twist",
    "parse_weight",
]


class PreconditionViolation(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Prime(int):
    """An ``int`` that is known to be prime.

    Validation is by trial division, which is fine for the characteristics
    anyone actually runs this with.
    """

    def __new__(cls, value):
        if isinstance(value, Prime):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"prime must be an int, got {type(value).__name__}")
        if not _is_prime(value):
            raise ValueError(f"{value} is not prime")
        return super().__new__(cls, value)

    def __repr__(self):
        return f"Prime({int(self)})"


class DigitSplit(NamedTuple):
    quotient: int
    digit: int


def _check_weight(lam: int) -> None:
    if lam < 0:
        raise PreconditionViolation(f"weight must be nonnegative, got {lam}")


def parse_weight(text: str) -> int:
    """Parse a decimal string into a weight; no signs, no exponents."""
    text = text.strip()
    if not text.isdigit():
        raise ValueError(f"not a decimal weight: {text!r}")
    return int(text)


def decompose(lam: int, p: int) -> DigitSplit:
    """Split ``lam = p * quotient + digit`` with ``0 <= digit < p``."""
    q, d = divmod(lam, p)
    return DigitSplit(q, d)


def padic_digits(lam: int, p: int) -> list[int]:
    """Base-p digits of ``lam``, least significant first (``[]`` for 0)."""
    _check_weight(lam)
    digits = []
    while lam:
        lam, d = divmod(lam, p)
        digits.append(d)
    return digits


def from_digits(digits, p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def is_linked(lam: int, r: int, p: int) -> bool:
    """Linkage test between ``L(lam)`` and ``Delta(r)``.

    True iff ``lam + r = -2`` or ``lam = r`` modulo ``2p``.
    """
    m = 2 * p
    return (lam + r + 2) % m == 0 or (lam - r) % m == 0


def linked_to_zero(lam: int, p: int) -> bool:
    m = 2 * p
    return lam % m == 0 or (lam + 2) % m == 0


def shift(lam: int, n: int, p: int) -> int:
    """The weight ``lam || n``.

    ``lam`` must be congruent to 0 or -2 mod 2p.  For the 0 class the result
    is ``p*(lam + n)``, for the -2 class ``p*(lam - n)``; odd ``n`` adds
    ``p - 2`` on top.  No cap is placed on ``n`` here.
    """
    _check_weight(lam)
    if n < 0:
        raise PreconditionViolation(f"shift amount must be nonnegative, got {n}")
    m = 2 * p
    if lam % m == 0:
        base = lam + n
    elif (lam + 2) % m == 0:
        if lam < n:
            raise PreconditionViolation(
                f"cannot shift {lam} by {n}: {lam} - {n} is negative"
            )
        base = lam - n
    else:
        raise PreconditionViolation(f"{lam} is not linked to zero for p={p}")
    out = p * base
    if n % 2:
        out += p - 2
    return out


def frobenius_twist(lam: int, p: int, d: int = 1) -> int:
    if d < 0:
        raise PreconditionViolation(f"twist depth must be nonnegative, got {d}")
    return lam * p**d
