"""Tests for capacities and the discrete Choquet integral."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choqfit.capacity import (
    Capacity,
    all_subsets,
    choquet,
    comonotonic,
    validate_capacity,
)

# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def test_valid_two_criterion_capacity():
    check = validate_capacity(Capacity.two(0.3, 0.7))
    assert check.ok
    assert check.kind is None


def test_missing_subset_is_structural():
    cap = Capacity(2, {frozenset(): 0, frozenset({1}): 0.5, frozenset({1, 2}): 1})
    check = validate_capacity(cap)
    assert not check.ok
    assert check.kind == "structure"
    assert "{2}" in check.detail


def test_bad_normalization_empty_set():
    cap = Capacity(2, {frozenset(): 0.1, frozenset({1}): 0.5, frozenset({2}): 0.5, frozenset({1, 2}): 1})
    check = validate_capacity(cap)
    assert check.kind == "normalization"


def test_bad_normalization_full_set():
    cap = Capacity.two(0.2, 0.2)
    cap = Capacity(2, {**cap.values, frozenset({1, 2}): 0.9})
    check = validate_capacity(cap)
    assert check.kind == "normalization"


def test_monotonicity_violation_names_the_pair():
    cap = Capacity(2, {frozenset(): 0, frozenset({1}): 1.2, frozenset({2}): 0.5, frozenset({1, 2}): 1})
    check = validate_capacity(cap)
    assert check.kind == "monotonicity"
    assert "{1}" in check.detail and "{1,2}" in check.detail


def test_singleton_weights_may_sum_past_one():
    # Monotonicity constrains each singleton against the full set only.
    check = validate_capacity(Capacity.two(0.9, 0.8))
    assert check.ok


def test_choquet_rejects_invalid_capacity():
    cap = Capacity(2, {frozenset(): 0, frozenset({1}): 2, frozenset({2}): 0, frozenset({1, 2}): 1})
    with pytest.raises(ValueError, match="invalid capacity"):
        choquet(cap, (1.0, 2.0))


def test_choquet_rejects_length_mismatch():
    with pytest.raises(ValueError, match="length"):
        choquet(Capacity.two(0.5, 0.5), (1.0, 2.0, 3.0))


def test_choquet_rejects_nan():
    with pytest.raises(ValueError, match="finite"):
        choquet(Capacity.two(0.5, 0.5), (float("nan"), 1.0))


def test_all_subsets_count():
    assert len(all_subsets(3)) == 8
    assert all_subsets(1) == [frozenset(), frozenset({1})]


# ---------------------------------------------------------------------------
# pinned values
# ---------------------------------------------------------------------------

# Independent split-integral oracle output (notes/oracles/capacity_oracle.py),
# each also checkable by hand against the two weighted-sum branches.
PINNED = [
    ((Fraction(1, 2), Fraction(1, 4)), (Fraction(3), Fraction(-2)), Fraction(1, 2)),
    ((Fraction(1, 3), Fraction(2, 3)), (Fraction(-5), Fraction(-1)), Fraction(-7, 3)),
    ((Fraction(3, 4), Fraction(1, 2)), (Fraction(-2), Fraction(4)), Fraction(1)),
    ((Fraction(1), Fraction(0)), (Fraction(7, 2), Fraction(1, 2)), Fraction(7, 2)),
    ((Fraction(0), Fraction(0)), (Fraction(-3), Fraction(5)), Fraction(-3)),
]


@pytest.mark.parametrize("nu,f,expected", PINNED)
def test_pinned_choquet_values(nu, f, expected):
    assert choquet(Capacity.two(*nu), f) == expected


def test_exact_arithmetic_stays_exact():
    out = choquet(Capacity.two(Fraction(1, 3), Fraction(1, 7)), (Fraction(2, 5), Fraction(9, 11)))
    assert isinstance(out, Fraction)
    # NW branch: (1 - 1/7) * 2/5 + 1/7 * 9/11
    assert out == Fraction(6, 7) * Fraction(2, 5) + Fraction(1, 7) * Fraction(9, 11)


# ---------------------------------------------------------------------------
# the two weighted-sum branches and the classic identities
# ---------------------------------------------------------------------------

units = st.floats(min_value=-50, max_value=50, allow_nan=False, width=32)


@given(f1=units, f2=units)
def test_branch_formula(f1, f2):
    cap = Capacity.two(0.3, 0.6)
    got = choquet(cap, (f1, f2))
    if f1 >= f2:
        want = 0.3 * f1 + 0.7 * f2
    else:
        want = 0.4 * f1 + 0.6 * f2
    assert got == pytest.approx(want, abs=1e-12)


@given(f1=units, f2=units)
def test_max_min_weighted_identities(f1, f2):
    assert choquet(Capacity.two(1, 1), (f1, f2)) == pytest.approx(max(f1, f2), abs=1e-12)
    assert choquet(Capacity.two(0, 0), (f1, f2)) == pytest.approx(min(f1, f2), abs=1e-12)
    got = choquet(Capacity.two(0.25, 0.75), (f1, f2))
    assert got == pytest.approx(0.25 * f1 + 0.75 * f2, abs=1e-12)


@given(c=units)
def test_idempotence(c):
    assert choquet(Capacity.two(0.4, 0.9), (c, c)) == pytest.approx(c, abs=1e-12)


@given(f1=units, f2=units, nu1=st.floats(0, 1, width=32), nu2=st.floats(0, 1, width=32))
def test_pointwise_monotonicity(f1, f2, nu1, nu2):
    cap = Capacity.two(nu1, nu2)
    base = choquet(cap, (f1, f2))
    assert choquet(cap, (f1 + 1.0, f2)) >= base - 1e-12
    assert choquet(cap, (f1, f2 + 1.0)) >= base - 1e-12


@given(
    u=st.tuples(units, units),
    w=st.tuples(units, units),
    a=st.floats(0, 10, width=32),
    b=st.floats(0, 10, width=32),
)
def test_comonotonic_additivity(u, w, a, b):
    if not comonotonic(u, w):
        u = tuple(sorted(u))
        w = tuple(sorted(w))
    cap = Capacity.two(0.7, 0.2)
    combo = tuple(a * ui + b * wi for ui, wi in zip(u, w))
    lhs = choquet(cap, combo)
    rhs = a * choquet(cap, u) + b * choquet(cap, w)
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_comonotonic_basic():
    assert comonotonic((1, 2), (3, 3))
    assert comonotonic((1, 1), (5, 0))
    assert not comonotonic((1, 2), (2, 1))
    with pytest.raises(ValueError):
        comonotonic((1,), (1, 2))


# ---------------------------------------------------------------------------
# cross-check against the split positive/negative level integral
# ---------------------------------------------------------------------------


def split_integral(cap, values):
    """Reference route: integrate nu(f >= t) over levels, split at zero."""
    n = cap.n
    full = frozenset(range(1, n + 1))

    def nu_at_least(t):
        return cap.values[frozenset(j + 1 for j in range(n) if values[j] >= t)]

    total = Fraction(0)
    prev = Fraction(0)
    for lev in sorted({v for v in values if v > 0}):
        total += (lev - prev) * nu_at_least(lev)
        prev = lev
    neg = sorted({v for v in values if v < 0})
    if neg:
        prev = neg[0]
        for lev in neg[1:]:
            total += (lev - prev) * (nu_at_least(lev) - cap.values[full])
            prev = lev
        total += (Fraction(0) - prev) * (
            cap.values[frozenset(j + 1 for j in range(n) if values[j] > prev)] - cap.values[full]
        )
    return total


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=9)
weights = st.fractions(min_value=0, max_value=1, max_denominator=8)


@settings(max_examples=300)
@given(nu1=weights, nu2=weights, f1=fracs, f2=fracs)
def test_sorted_differences_matches_split_integral(nu1, nu2, f1, f2):
    cap = Capacity.two(nu1, nu2)
    assert choquet(cap, (f1, f2)) == split_integral(cap, (f1, f2))


@settings(max_examples=150)
@given(
    s=st.lists(weights, min_size=3, max_size=3),
    f=st.lists(fracs, min_size=3, max_size=3),
)
def test_three_criterion_agreement(s, f):
    singles = sorted(s)
    vals = {
        frozenset(): Fraction(0),
        frozenset({1}): singles[0],
        frozenset({2}): singles[1],
        frozenset({3}): singles[2],
        frozenset({1, 2}): max(singles[0], singles[1]),
        frozenset({1, 3}): max(singles[0], singles[2]),
        frozenset({2, 3}): max(singles[1], singles[2]),
        frozenset({1, 2, 3}): Fraction(1),
    }
    cap = Capacity(3, vals)
    assert choquet(cap, tuple(f)) == split_integral(cap, tuple(f))
