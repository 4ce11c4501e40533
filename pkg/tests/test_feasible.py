"""Feasibility routes: the LP backend against exact elimination."""

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choqfit import (
    Capacity,
    FeasibilitySystem,
    Row,
    cone_mask,
    coordinate_order,
    induce,
    merge_duplicates,
    order_system,
    solve_exact,
    solve_main,
)
from choqfit.relation import PreferenceRelation


def fractions(nums, den):
    return [F(k, den) for k in nums]


def induced(cap, u_nums, w_nums, den):
    rel = induce(fractions(u_nums, den), fractions(w_nums, den), cap)
    rel, _ = merge_duplicates(rel)
    return rel


def rows(*specs):
    built = []
    for coeffs, rhs, eq in specs:
        built.append(Row(tuple(F(c) for c in coeffs), F(rhs), eq))
    return tuple(built)


# ---------------------------------------------------------------------------
# hand systems, both routes
# ---------------------------------------------------------------------------


def test_empty_system_is_feasible():
    sys_ = FeasibilitySystem(3, ())
    assert solve_main(sys_).feasible
    res = solve_exact(sys_)
    assert res.feasible
    assert res.point == (F(0), F(0), F(0))


def test_single_lower_bound_hits_it_exactly():
    sys_ = FeasibilitySystem(1, rows(((1,), 5, False)))
    res = solve_exact(sys_)
    assert res.feasible and res.point == (F(5),)
    assert solve_main(sys_).feasible


def test_box_system_solved_exactly():
    sys_ = FeasibilitySystem(
        2,
        rows(
            ((1, 1), 2, False),
            ((-1, 0), -1, False),
            ((0, -1), -1, False),
        ),
    )
    res = solve_exact(sys_)
    assert res.feasible
    assert sys_.holds_at(res.point)
    # x + y >= 2 with x, y <= 1 pins the corner.
    assert res.point == (F(1), F(1))


def test_equality_chain_substitution():
    sys_ = FeasibilitySystem(
        3,
        rows(
            ((1, -1, 0), 0, True),
            ((0, 1, -1), 0, True),
            ((1, 1, 1), 6, False),
            ((-1, 0, 0), -4, False),
        ),
    )
    res = solve_exact(sys_)
    assert res.feasible
    x, y, z = res.point
    assert x == y == z
    assert F(2) <= x <= F(4)
    assert solve_main(sys_).feasible


def test_contradictory_pair_is_infeasible_with_certificate():
    sys_ = FeasibilitySystem(1, rows(((1,), 1, False), ((-1,), 0, False)))
    assert not solve_main(sys_).feasible
    res = solve_exact(sys_)
    assert not res.feasible
    assert res.certificate == (0, 1)


def test_equality_against_inequality_is_infeasible():
    sys_ = FeasibilitySystem(
        2, rows(((1, 1), 1, True), ((-1, -1), 0, False))
    )
    res = solve_exact(sys_)
    assert not res.feasible
    assert res.certificate == (0, 1)
    assert not solve_main(sys_).feasible


def test_certificate_is_irreducible():
    # Rows 0 and 2 clash; row 1 is an innocent bystander.
    sys_ = FeasibilitySystem(
        2,
        rows(
            ((1, 0), 3, False),
            ((0, 1), 0, False),
            ((-1, 0), -2, False),
        ),
    )
    res = solve_exact(sys_)
    assert not res.feasible
    assert res.certificate == (0, 2)
    assert not solve_exact(sys_.subset(res.certificate)).feasible
    for drop in range(len(res.certificate)):
        kept = [i for k, i in enumerate(res.certificate) if k != drop]
        assert solve_exact(sys_.subset(kept)).feasible


def test_constant_rows_without_variables():
    ok = FeasibilitySystem(0, (Row((), F(-1), False), Row((), F(0), True)))
    assert solve_main(ok).feasible
    assert solve_exact(ok).feasible
    bad = FeasibilitySystem(0, (Row((), F(1), False),))
    assert not solve_main(bad).feasible
    assert not solve_exact(bad).feasible


# ---------------------------------------------------------------------------
# systems built from relations
# ---------------------------------------------------------------------------


def test_single_point_mask_is_trivially_feasible():
    rel = induced(Capacity.two(F(3, 5), F(2, 5)), (1, 4, 7, 9), (2, 5, 8, 11), 12)
    mask = np.zeros((4, 4), dtype=bool)
    mask[1, 2] = True
    sys_, (rows_used, cols_used) = order_system(rel, mask)
    assert rows_used == (1,) and cols_used == (2,)
    assert not sys_.rows
    assert solve_exact(sys_).feasible


def test_additive_cone_point_reproduces_the_order():
    rel = induced(Capacity.two(F(3, 5), F(2, 5)), (1, 4, 7, 9), (2, 5, 8, 11), 12)
    o1, o2 = coordinate_order(rel, 1), coordinate_order(rel, 2)
    cone = cone_mask(o1, o2, (1, 2), "se")
    sys_, (rows_used, cols_used) = order_system(rel, cone)
    res = solve_exact(sys_)
    assert res.feasible

    def value(i, j):
        return (
            res.point[rows_used.index(i)]
            + res.point[len(rows_used) + cols_used.index(j)]
        )

    pts = [(int(i), int(j)) for i, j in np.argwhere(cone)]
    for a in pts:
        for b in pts:
            want = rel.compare(a, b)
            diff = value(*a) - value(*b)
            if want == 0:
                assert diff == 0
            elif want > 0:
                assert diff >= 1
            else:
                assert diff <= -1


def test_lp_point_reproduces_the_order_within_slack():
    rel = induced(Capacity.two(F(3, 5), F(2, 5)), (1, 4, 7, 9), (2, 5, 8, 11), 12)
    o1, o2 = coordinate_order(rel, 1), coordinate_order(rel, 2)
    cone = cone_mask(o1, o2, (0, 3), "se")
    sys_, _ = order_system(rel, cone)
    res = solve_main(sys_)
    assert res.feasible
    assert sys_.holds_at(res.point, 1e-9)


def test_cancellation_failure_makes_the_cone_infeasible():
    # Two rows tied in one column but split in another cannot be
    # additively valued; both routes must notice.
    rel = induced(Capacity.two(F(0), F(0)), (1, 4, 7, 9), (2, 5, 8, 11), 12)
    full = np.ones((4, 4), dtype=bool)
    sys_, _ = order_system(rel, full)
    lp, fm = solve_main(sys_), solve_exact(sys_)
    assert not lp.feasible and not fm.feasible
    assert fm.certificate is not None
    assert not solve_exact(sys_.subset(fm.certificate)).feasible


def test_intransitive_data_falls_back_to_pairwise_rows():
    space_rel = induced(
        Capacity.two(F(3, 5), F(2, 5)), (1, 4, 7), (2, 5, 8), 12
    )
    cmp = np.array(space_rel.cmp, copy=True)
    # Force a strict 3-cycle among three points of the top row.
    a, b, c = 6, 7, 8
    for x, y in ((a, b), (b, c), (c, a)):
        cmp[x, y], cmp[y, x] = 1, -1
    rel = PreferenceRelation(space_rel.space, cmp)
    mask = np.zeros((3, 3), dtype=bool)
    mask[2, :] = True
    sys_, _ = order_system(rel, mask)
    assert not solve_exact(sys_).feasible
    assert not solve_main(sys_).feasible


def test_mask_shape_and_delta_validation():
    rel = induced(Capacity.two(F(3, 5), F(2, 5)), (1, 4, 7), (2, 5, 8), 12)
    with pytest.raises(ValueError, match="delta"):
        order_system(rel, np.ones((3, 3), dtype=bool), delta=F(0))
    with pytest.raises(ValueError, match="shape"):
        order_system(rel, np.ones((2, 3), dtype=bool))


# ---------------------------------------------------------------------------
# route agreement
# ---------------------------------------------------------------------------


CONE_CAPS = [
    Capacity.two(F(1, 2), F(1, 4)),
    Capacity.two(F(0), F(0)),
    Capacity.two(F(1), F(1)),
    Capacity.two(F(0), F(1, 3)),
]


@pytest.mark.parametrize("cap", CONE_CAPS, ids=["interactive", "min", "max", "one-ess"])
def test_routes_agree_on_every_cone(cap):
    rel = induced(cap, (1, 4, 7, 10, 13), (2, 5, 8, 11, 14), 15)
    o1, o2 = coordinate_order(rel, 1), coordinate_order(rel, 2)
    for z1 in range(rel.m1):
        for z2 in range(rel.m2):
            for kind in ("se", "nw"):
                sys_, _ = order_system(rel, cone_mask(o1, o2, (z1, z2), kind))
                lp, fm = solve_main(sys_), solve_exact(sys_)
                assert lp.feasible == fm.feasible, (z1, z2, kind)
                if fm.feasible:
                    assert sys_.holds_at(fm.point)


@settings(max_examples=60, deadline=None)
@given(
    n_vars=st.integers(min_value=1, max_value=4),
    data=st.data(),
)
def test_routes_agree_on_random_systems(n_vars, data):
    coeff = st.integers(min_value=-2, max_value=2)
    n_rows = data.draw(st.integers(min_value=1, max_value=7))
    built = []
    for _ in range(n_rows):
        coeffs = tuple(F(data.draw(coeff)) for _ in range(n_vars))
        rhs = F(data.draw(st.integers(min_value=-3, max_value=3)))
        equality = data.draw(st.booleans())
        built.append(Row(coeffs, rhs, equality))
    sys_ = FeasibilitySystem(n_vars, tuple(built))
    lp, fm = solve_main(sys_), solve_exact(sys_)
    assert lp.feasible == fm.feasible
    if fm.feasible:
        assert sys_.holds_at(fm.point)
        assert sys_.holds_at(lp.point, 1e-7)
    else:
        assert fm.certificate
        assert not solve_exact(sys_.subset(fm.certificate)).feasible
