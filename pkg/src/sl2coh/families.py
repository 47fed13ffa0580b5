"""Symbolic families of maximally untwisted cohomological weights.

A family is a small expression tree built from three node kinds:

``Zero``
    the weight 0;
``Twist(child, param)``
    ``p**n * child`` where ``n`` is a free parameter ranging over 0, 1, 2, ...;
``Shift(child, amount)``
    ``child || amount`` (see :func:`sl2coh.weights.shift`).

For ``p > q`` the maximally untwisted ``q``-cohomological weights are exactly
the values of the trees ``Shift(Twist(e, n), q - i)`` with ``e`` running over
the families for each smaller degree ``i``, starting from ``{Zero}``.

Trees print in a nested form such as ``shift(twist(shift(twist(0,n1),1),n2),2)``
and can be parsed back with :func:`parse_family`.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .weights import Prime, linked_to_zero, shift

__all__ = [
    "Zero",
    "Twist",
    "Shift",
    "FamilyExpr",
    "HypothesisViolation",
    "MissingParameter",
    "AmbiguousClass",
    "SymbolicWeight",
    "ExpansionReport",
    "wq_families",
    "canonicalize",
    "parameters",
    "degree",
    "evaluate",
    "expand",
    "to_symbolic",
    "symbolic_branches",
    "render",
    "parse_family",
]


class HypothesisViolation(ValueError):
    """The requested prime does not satisfy ``p > q``."""


class MissingParameter(KeyError):
    pass


class AmbiguousClass(ValueError):
    """The residue class of a shifted weight depends on whether a parameter is 0.

    ``branches`` holds every ``(conditions, SymbolicWeight)`` pair, where the
    conditions map a parameter to ``"0"`` or ``">=1"``.
    """

    def __init__(self, param, branches=()):
        self.param = param
        self.branches = list(branches)
        super().__init__(
            f"class of the shifted weight depends on whether {param} is zero; "
            f"{len(self.branches)} branches"
        )


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Twist:
    child: "FamilyExpr"
    param: str

    def __str__(self):
        return f"twist({self.child},{self.param})"


@dataclass(frozen=True)
class Shift:
    child: "FamilyExpr"
    amount: int

    def __str__(self):
        return f"shift({self.child},{self.amount})"


FamilyExpr = Union[Zero, Twist, Shift]


def parameters(e: FamilyExpr) -> list[str]:
    """Parameter ids in post-order (innermost twist first)."""
    if isinstance(e, Zero):
        return []
    out = parameters(e.child)
    if isinstance(e, Twist):
        out.append(e.param)
    return out


def degree(e: FamilyExpr) -> int:
    """Cohomological degree of a family: the sum of its shift amounts."""
    if isinstance(e, Zero):
        return 0
    d = degree(e.child)
    return d + e.amount if isinstance(e, Shift) else d


def canonicalize(e: FamilyExpr) -> FamilyExpr:
    """Rename parameters to n1, n2, ... in post-order."""
    counter = [0]

    def walk(node):
        if isinstance(node, Zero):
            return node
        child = walk(node.child)
        if isinstance(node, Shift):
            return Shift(child, node.amount)
        counter[0] += 1
        return Twist(child, f"n{counter[0]}")

    return walk(e)


@lru_cache(maxsize=None)
def _wq_families(q: int) -> tuple:
    if q == 0:
        return (Zero(),)
    seen = set()
    out = []
    for i in range(q):
        for e in _wq_families(i):
            fam = canonicalize(Shift(Twist(e, "_"), q - i))
            if fam not in seen:
                seen.add(fam)
                out.append(fam)
    return tuple(out)


def wq_families(q: int) -> list[FamilyExpr]:
    """Families whose values make up the set W_q (valid for ``p > q``)."""
    if q < 0:
        raise ValueError("degree must be nonnegative")
    return list(_wq_families(q))


_TOKEN = re.compile(r"\s*(shift|twist|\(|\)|,|\d+|[A-Za-z_]\w*)")


def parse_family(text: str) -> FamilyExpr:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse family at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    tokens.append(None)
    i = 0

    def expect(tok):
        nonlocal i
        if tokens[i] != tok:
            raise ValueError(f"expected {tok!r}, got {tokens[i]!r}")
        i += 1

    def node():
        nonlocal i
        tok = tokens[i]
        i += 1
        if tok == "0":
            return Zero()
        if tok not in ("shift", "twist"):
            raise ValueError(f"unexpected token {tok!r}")
        expect("(")
        child = node()
        expect(",")
        arg = tokens[i]
        i += 1
        expect(")")
        if tok == "shift":
            if arg is None or not arg.isdigit():
                raise ValueError(f"shift amount must be a nonnegative integer, got {arg!r}")
            return Shift(child, int(arg))
        if arg is None or not re.fullmatch(r"[A-Za-z_]\w*", arg):
            raise ValueError(f"bad parameter name {arg!r}")
        return Twist(child, arg)

    e = node()
    if tokens[i] is not None:
        raise ValueError(f"trailing input after family: {tokens[i]!r}")
    return e


# -- evaluation --------------------------------------------------------------


def evaluate(e: FamilyExpr, p: int, assignment) -> int | None:
    """Concrete weight of ``e``; ``None`` where a shift is undefined."""
    if isinstance(e, Zero):
        return 0
    v = evaluate(e.child, p, assignment)
    if v is None:
        return None
    if isinstance(e, Twist):
        try:
            k = assignment[e.param]
        except KeyError:
            raise MissingParameter(e.param) from None
        if k < 0:
            raise ValueError(f"parameter {e.param} must be nonnegative")
        return v * p**k
    m = 2 * p
    if v % m == 0 or ((v + 2) % m == 0 and v >= e.amount):
        return shift(v, e.amount, p)
    return None


@dataclass
class ExpansionReport:
    concrete: list[int]
    truncated_at: int
    # family string -> parameter -> largest exponent used by a value <= bound
    parameter_ranges: dict[str, dict[str, int]] = field(default_factory=dict)


def _enumerate(e, p, limit):
    """Yield ``(value, assignment)`` for every defined value ``<= limit``."""
    if limit < 0:
        return
    if isinstance(e, Zero):
        yield 0, {}
    elif isinstance(e, Twist):
        for v, a in _enumerate(e.child, p, limit):
            if v == 0:
                # constant in the parameter; one representative is enough
                yield 0, {**a, e.param: 0}
                continue
            k = 0
            while v <= limit:
                yield v, {**a, e.param: k}
                v *= p
                k += 1
    else:
        n = e.amount
        m = 2 * p
        # lam || n >= p*(lam - n), so larger children overshoot the limit
        for v, a in _enumerate(e.child, p, limit // p + n):
            if v % m == 0 or ((v + 2) % m == 0 and v >= n):
                s = shift(v, n, p)
                if s <= limit:
                    yield s, a


def expand(families, p: int, bound: int) -> ExpansionReport:
    """All values ``<= bound`` taken by ``families`` at the prime ``p``."""
    p = int(Prime(p))
    families = list(families)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    top = max((degree(e) for e in families), default=0)
    if top > 0 and p <= top:
        raise HypothesisViolation(f"family expansion needs p > q, got p={p}, q={top}")
    values = set()
    ranges = {}
    for e in families:
        seen = {}
        for v, a in _enumerate(e, p, bound):
            values.add(v)
            for k, x in a.items():
                if x > seen.get(k, -1):
                    seen[k] = x
        ranges[str(e)] = {k: seen[k] for k in parameters(e) if k in seen}
    return ExpansionReport(sorted(values), bound, ranges)


# -- symbolic form -----------------------------------------------------------


class SymbolicWeight:
    """A sum of monomials ``coeff * p**(base_exp + sum(params))``.

    Monomials are stored combined and sorted, so two equal weights compare
    equal.
    """

    __slots__ = ("monomials",)

    def __init__(self, monomials=()):
        acc = defaultdict(int)
        for coeff, base, params in monomials:
            acc[(base, tuple(sorted(params)))] += coeff
        self.monomials = tuple(
            (c, base, params)
            for (base, params), c in sorted(acc.items(), reverse=True)
            if c
        )

    @classmethod
    def constant(cls, c):
        return cls([(c, 0, ())])

    def __eq__(self, other):
        return isinstance(other, SymbolicWeight) and self.monomials == other.monomials

    def __hash__(self):
        return hash(self.monomials)

    def __repr__(self):
        return f"SymbolicWeight({render(self)!r})"

    def __add__(self, other):
        if isinstance(other, int):
            other = SymbolicWeight.constant(other)
        return SymbolicWeight(self.monomials + other.monomials)

    def __sub__(self, other):
        if isinstance(other, int):
            other = SymbolicWeight.constant(other)
        return self + SymbolicWeight((-c, b, ps) for c, b, ps in other.monomials)

    def times_p(self, k=1, param=None):
        extra = (param,) if param is not None else ()
        return SymbolicWeight((c, b + k, ps + extra) for c, b, ps in self.monomials)

    def is_zero(self):
        return not self.monomials

    def evaluate(self, p: int, assignment=None) -> int:
        assignment = assignment or {}
        total = 0
        for c, b, ps in self.monomials:
            try:
                e = b + sum(assignment[x] for x in ps)
            except KeyError as exc:
                raise MissingParameter(exc.args[0]) from None
            total += c * p**e
        return total

    def __str__(self):
        return render(self)


def _power(base, params):
    if params:
        parts = list(params) + ([str(base)] if base else [])
        return "p^(" + "+".join(parts) + ")"
    if base == 0:
        return ""
    if base == 1:
        return "p"
    return f"p^{base}"


def render(s: SymbolicWeight) -> str:
    """Expanded polynomial form, e.g. ``2p^(n1+2) - 2p^(n1+1) + 2p``."""
    if s.is_zero():
        return "0"
    out = []
    for i, (c, base, params) in enumerate(s.monomials):
        power = _power(base, params)
        mag = abs(c)
        term = power if (power and mag == 1) else f"{mag}{power}"
        if i == 0:
            out.append(("-" if c < 0 else "") + term)
        else:
            out.append((" - " if c < 0 else " + ") + term)
    return "".join(out)


_CLASS_ZERO = 0
_CLASS_MINUS_TWO = -2


def _symbolic(e, branch):
    """Return ``(weight, residue class mod 2p)`` under the given branch choices."""
    if isinstance(e, Zero):
        return SymbolicWeight(), _CLASS_ZERO
    s, cls = _symbolic(e.child, branch)
    if isinstance(e, Twist):
        if s.is_zero():
            return s, cls
        if cls == _CLASS_ZERO:
            # twisting an even weight in the 0 class keeps it there
            return s.times_p(0, e.param), _CLASS_ZERO
        choice = branch.get(e.param)
        if choice is None:
            raise AmbiguousClass(e.param)
        if choice == "0":
            return s, _CLASS_MINUS_TWO
        return s.times_p(0, e.param), _CLASS_ZERO
    n = e.amount
    inner = s + n if cls == _CLASS_ZERO else s - n
    out = inner.times_p(1)
    if n % 2:
        out = out + SymbolicWeight([(1, 1, ()), (-2, 0, ())])
        return out, _CLASS_MINUS_TWO
    return out, _CLASS_ZERO


def symbolic_branches(e: FamilyExpr) -> list[tuple[dict[str, str], SymbolicWeight]]:
    """Every branch of the symbolic form of ``e``.

    A branch fixes, for each parameter whose zero-ness changes a residue
    class, whether it is ``"0"`` or ``">=1"``.  Parameters not mentioned in
    the conditions range over all of 0, 1, 2, ....
    """
    done = []
    todo = [{}]
    while todo:
        branch = todo.pop()
        try:
            s, _ = _symbolic(e, branch)
        except AmbiguousClass as exc:
            todo.append({**branch, exc.param: ">=1"})
            todo.append({**branch, exc.param: "0"})
            continue
        done.append((branch, s))
    order = {k: i for i, k in enumerate(parameters(e))}
    done.sort(key=lambda bs: [(order[k], v) for k, v in sorted(bs[0].items(), key=lambda kv: order[kv[0]])])
    return done


def to_symbolic(e: FamilyExpr, branch=None) -> SymbolicWeight:
    """Symbolic weight of ``e`` in the branch ``branch``.

    Raises :class:`AmbiguousClass` (carrying all branches) if ``branch`` does
    not pin down every residue class that the shifts depend on.
    """
    try:
        s, _ = _symbolic(e, dict(branch or {}))
    except AmbiguousClass as exc:
        raise AmbiguousClass(exc.param, symbolic_branches(e)) from None
    return s


def branch_admits(branch, assignment) -> bool:
    for k, v in branch.items():
        x = assignment[k]
        if (v == "0") != (x == 0):
            return False
    return True
