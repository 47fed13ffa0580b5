import itertools

import pytest
from hypothesis import given, strategies as st

from sl2coh.families import (
    AmbiguousClass,
    HypothesisViolation,
    MissingParameter,
    Shift,
    SymbolicWeight,
    Twist,
    Zero,
    branch_admits,
    canonicalize,
    degree,
    evaluate,
    expand,
    parameters,
    parse_family,
    render,
    symbolic_branches,
    to_symbolic,
    wq_families,
)

W1 = Shift(Twist(Zero(), "n1"), 1)
NESTED = Shift(Twist(Shift(Twist(Zero(), "n1"), 1), "n2"), 2)


def test_w0_and_w1():
    assert wq_families(0) == [Zero()]
    assert wq_families(1) == [W1]


def test_w2_unfolds_directly():
    assert wq_families(2) == [
        Shift(Twist(Zero(), "n1"), 2),
        Shift(Twist(Shift(Twist(Zero(), "n1"), 1), "n2"), 1),
    ]


@pytest.mark.parametrize("q,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 8), (5, 16)])
def test_family_counts(q, count):
    fams = wq_families(q)
    assert len(fams) == count == len(set(fams))
    assert all(degree(e) == q for e in fams)


def test_parameters_are_distinct_and_canonical():
    for q in range(6):
        for e in wq_families(q):
            ps = parameters(e)
            assert ps == [f"n{i}" for i in range(1, len(ps) + 1)]
            assert canonicalize(e) == e


def test_serialization_round_trip():
    assert str(NESTED) == "shift(twist(shift(twist(0,n1),1),n2),2)"
    for q in range(6):
        for e in wq_families(q):
            assert parse_family(str(e)) == e
    for bad in ("shift(0)", "twist(0,1)", "shift(0,1) x", "shift(0,-1)"):
        with pytest.raises(ValueError):
            parse_family(bad)


@pytest.mark.parametrize(
    "e,assignment,expected",
    [
        (W1, {"n1": 4}, 8),
        (Shift(Twist(Shift(Twist(Zero(), "a"), 1), "b"), 1), {"a": 0, "b": 0}, 38),
        (Shift(Twist(Shift(Twist(Zero(), "a"), 1), "b"), 2), {"a": 0, "b": 1}, 210),
    ],
)
def test_evaluate_examples(e, assignment, expected):
    assert evaluate(e, 5, assignment) == expected


def test_evaluate_undefined_and_missing():
    # 2p - 2 = 2 at p = 2 cannot be shifted down by 3
    assert evaluate(Shift(W1, 3), 2, {"n1": 0}) is None
    with pytest.raises(MissingParameter):
        evaluate(W1, 5, {})


@pytest.mark.parametrize(
    "families,p,bound,expected",
    [
        (wq_families(1), 5, 1000, [8]),
        (wq_families(2), 5, 1000, [10, 38, 208]),
        (wq_families(0), 7, 0, [0]),
    ],
)
def test_expand_examples(families, p, bound, expected):
    report = expand(families, p, bound)
    assert report.concrete == expected
    assert report.truncated_at == bound


def test_expand_reports_parameter_ranges():
    report = expand(wq_families(2), 5, 10**4)
    assert report.parameter_ranges["shift(twist(shift(twist(0,n1),1),n2),1)"]["n2"] == 3  # 8 * 5**4 + 8 = 5008


def test_expand_rejects_small_primes():
    with pytest.raises(HypothesisViolation):
        expand(wq_families(3), 3, 100)
    with pytest.raises(HypothesisViolation):
        expand(wq_families(2), 2, 100)


def brute_expand(families, p, bound, max_param=12):
    # plain enumeration of every assignment with parameters <= max_param
    out = set()
    for e in families:
        ps = parameters(e)
        for values in itertools.product(range(max_param + 1), repeat=len(ps)):
            v = evaluate(e, p, dict(zip(ps, values)))
            if v is not None and v <= bound:
                out.add(v)
    return sorted(out)


@pytest.mark.parametrize("q,p", [(1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 5)])
def test_expand_matches_brute_force(q, p):
    bound = 20000
    assert expand(wq_families(q), p, bound).concrete == brute_expand(wq_families(q), p, bound, 8)


@pytest.mark.parametrize("q,p", [(2, 5), (3, 7), (4, 5)])
def test_expand_idempotent_and_bound_monotone(q, p):
    fams = wq_families(q)
    bounds = [0, 10, 100, 1000, 5000, 20000]
    results = [set(expand(fams, p, b).concrete) for b in bounds]
    for b, got in zip(bounds, results):
        assert all(v <= b for v in got)
        assert set(expand(fams, p, b).concrete) == got
    for small, big in zip(results, results[1:]):
        assert small <= big


@pytest.mark.parametrize("q", [1, 2, 3, 4])
@pytest.mark.parametrize("p", [5, 7, 11])
def test_evaluate_monotone_in_each_parameter(q, p):
    for e in wq_families(q):
        ps = parameters(e)
        for values in itertools.product(range(4), repeat=len(ps)):
            a = dict(zip(ps, values))
            v = evaluate(e, p, a)
            if v is None:
                continue
            for k in ps:
                w = evaluate(e, p, {**a, k: a[k] + 1})
                assert w is not None and w >= v


# -- symbolic ----------------------------------------------------------------


def test_symbolic_w1():
    s = to_symbolic(W1)
    assert s == SymbolicWeight([(2, 1, ()), (-2, 0, ())])
    assert render(s) == "2p - 2"


def test_symbolic_branches_of_nested_family():
    with pytest.raises(AmbiguousClass) as info:
        to_symbolic(NESTED)
    assert info.value.param == "n2"
    assert len(info.value.branches) == 2
    zero = to_symbolic(NESTED, {"n2": "0"})
    assert render(zero) == "2p^2 - 4p"
    pos = to_symbolic(NESTED, {"n2": ">=1"})
    assert render(pos) == "2p^(n2+2) - 2p^(n2+1) + 2p"
    # p^(b+1) * (2p - 2) + 2p
    for p in (5, 7, 11):
        for b in range(1, 5):
            assert pos.evaluate(p, {"n2": b}) == p ** (b + 1) * (2 * p - 2) + 2 * p


@pytest.mark.parametrize(
    "monomials,text",
    [
        ([(2, 1, ())], "2p"),
        ([], "0"),
        ([(1, 0, ("n",)), (-1, 0, ())], "p^(n) - 1"),
        ([(-1, 3, ()), (5, 0, ())], "-p^3 + 5"),
        ([(2, 2, ("n",)), (-2, 1, ("n",)), (2, 1, ())], "2p^(n+2) - 2p^(n+1) + 2p"),
        ([(1, 1, ()), (1, 1, ()), (-2, 1, ())], "0"),
    ],
)
def test_render(monomials, text):
    assert render(SymbolicWeight(monomials)) == text


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5])
def test_symbolic_agrees_with_evaluate(q):
    for e in wq_families(q):
        ps = parameters(e)
        branches = symbolic_branches(e)
        for p in (5, 7, 11):
            for values in itertools.product(range(4), repeat=len(ps)):
                a = dict(zip(ps, values))
                v = evaluate(e, p, a)
                matching = [s for cond, s in branches if branch_admits(cond, a)]
                assert len(matching) == 1
                if v is not None:
                    assert matching[0].evaluate(p, a) == v


def test_theorem_a_forms_appear_among_symbolic_branches():
    rendered = {render(s) for e in wq_families(3) for _, s in symbolic_branches(e)}
    for form in ("4p - 2", "2p^2 - 4p", "2p^3 - 2p^2 - 2p - 2", "2p^(n2+2) - 2p^(n2+1) + 2p"):
        assert form in rendered


@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_symbolic_values_nonnegative(p, a, b, c):
    for e in wq_families(3):
        assignment = dict(zip(parameters(e), (a, b, c)))
        for cond, s in symbolic_branches(e):
            if branch_admits(cond, assignment):
                assert s.evaluate(p, assignment) >= 0
