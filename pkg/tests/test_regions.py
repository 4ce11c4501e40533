"""Region classification on hand-worked grids and induced instances."""

from fractions import Fraction as F

import numpy as np
import pytest

from choqfit.capacity import Capacity
from choqfit.instances import induce
from choqfit.regions import (
    classify_regions,
    cone_mask,
    essential_on,
    solvability_gaps,
)
from choqfit.relation import coordinate_order, merge_duplicates, relation_from_dict
from choqfit.scans import ScanContext, octuple_witness, transpose_relation


def interleaved(nu1, nu2):
    """3x3 grid with levels interleaved u0 < w0 < u1 < w1 < u2 < w2."""
    u = [F(1, 6), F(3, 6), F(5, 6)]
    w = [F(2, 6), F(4, 6), F(6, 6)]
    return induce(u, w, Capacity.two(nu1, nu2))


# Worked by hand from the definition, cone by cone: cancellation holds
# on every south-east cone anchored in column 0 or row 2 and fails on
# the four upper-right anchors (their cones mix a constant row with a
# strictly increasing one).  Under min and max the cone geometry and
# the pass/fail pattern coincide; only which axis matters inside each
# region flips.
PASS_SE = np.array([[1, 0, 0], [1, 0, 0], [1, 1, 1]], dtype=bool)
PASS_NW = np.array([[1, 1, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
REGION_SE = PASS_SE
REGION_NW = PASS_NW
CORNERS = np.zeros((3, 3), dtype=bool)
CORNERS[0, 0] = CORNERS[2, 2] = True


@pytest.mark.parametrize(
    "nu,ess_se,ess_nw,ess_se_full,ess_nw_full",
    [
        ((0, 0), (False, True), (True, False), (True, True), (True, False)),
        ((1, 1), (True, False), (False, True), (True, True), (False, True)),
    ],
    ids=["min", "max"],
)
def test_interleaved_extremes_oracle(nu, ess_se, ess_nw, ess_se_full, ess_nw_full):
    lab = classify_regions(interleaved(*nu))
    assert lab.ok
    assert (lab.se_pass == PASS_SE).all()
    assert (lab.nw_pass == PASS_NW).all()
    assert (lab.in_se == REGION_SE).all()
    assert (lab.in_nw == REGION_NW).all()
    assert (lab.theta == CORNERS).all()
    assert (lab.se_ext == CORNERS).all()
    assert (lab.nw_ext == CORNERS).all()
    assert lab.essential_se == ess_se
    assert lab.essential_nw == ess_nw
    assert lab.essential_se_full == ess_se_full
    assert lab.essential_nw_full == ess_nw_full


def test_interleaved_min_working_masks():
    lab = classify_regions(interleaved(0, 0))
    exp_se = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0]], dtype=bool)
    exp_nw = np.array([[0, 1, 1], [0, 1, 1], [0, 0, 0]], dtype=bool)
    assert (lab.se_work == exp_se).all()
    assert (lab.nw_work == exp_nw).all()
    assert not lab.theta_work.any()


def test_interleaved_interactive_is_all_frontier():
    # nu strictly inside the square but off the additive diagonal: on a
    # 3x3 grid with this interleaving the data is still consistent with
    # a single additive rule, so every point carries both labels.
    lab = classify_regions(interleaved(F(1, 2), F(1, 4)))
    assert lab.ok
    assert lab.theta.all()
    assert lab.essential_se == (False, False)
    assert lab.essential_nw == (False, False)


def test_cone_masks_match_definition():
    rel = interleaved(0, 0)
    o1 = coordinate_order(rel, 1)
    o2 = coordinate_order(rel, 2)
    se = cone_mask(o1, o2, (1, 1), "se")
    nw = cone_mask(o1, o2, (1, 1), "nw")
    assert (se == np.array([[0, 0, 0], [1, 1, 0], [1, 1, 0]], dtype=bool)).all()
    assert (nw == np.array([[0, 1, 1], [0, 1, 1], [0, 0, 0]], dtype=bool)).all()
    with pytest.raises(ValueError, match="cone kind"):
        cone_mask(o1, o2, (0, 0), "ne")


def test_essential_on_reads_values_not_geometry():
    rel = interleaved(0, 0)
    col0 = np.zeros((3, 3), dtype=bool)
    col0[:, 0] = True
    assert essential_on(rel, col0, 1)      # 1 < 2 < 2 has a strict step
    assert not essential_on(rel, col0, 2)  # single column: no axis-2 pair
    row0 = np.zeros((3, 3), dtype=bool)
    row0[0, :] = True
    assert not essential_on(rel, row0, 2)  # min row 0 is constant
    with pytest.raises(ValueError, match="axis"):
        essential_on(rel, col0, 3)


def test_incomplete_axis_order_reported():
    # (a0, p) beats (a1, p) but loses with partner q: no coordinate
    # order exists, classification must refuse with the axis named.
    rel = relation_from_dict(
        {
            "x1": ["a0", "a1"],
            "x2": ["p", "q"],
            "pairs": [
                [0, 0, 1, 0, "P"],
                [1, 1, 0, 1, "P"],
                [0, 0, 0, 1, "P"],
                [0, 0, 1, 1, "P"],
                [1, 0, 0, 1, "P"],
                [1, 0, 1, 1, "P"],
            ],
        }
    )
    lab = classify_regions(rel)
    assert not lab.ok
    assert "axis 1" in lab.reason and "incomplete" in lab.reason


@pytest.mark.parametrize(
    "nu1,nu2",
    [(0, 0), (1, 1), (F(1, 2), F(1, 4)), (F(1, 3), F(2, 3)), (1, F(1, 3)), (F(1, 3), 1)],
    ids=["min", "max", "interactive", "additive", "se-heavy", "nw-heavy"],
)
def test_induced_instances_cover_and_stay_consistent(nu1, nu2):
    # Three grids per regime: classification must label every point,
    # strict-side points must land on their side, and cancellation must
    # hold inside each painted region.
    cases = [
        ([3, 17, 24, 40], [8, 21, 33, 47]),
        ([5, 6, 29, 41, 53], [11, 19, 37, 44]),
        ([2, 13, 31], [7, 22, 50, 59]),
    ]
    cap = Capacity.two(nu1, nu2)
    for uraw, wraw in cases:
        u = [F(v, 60) for v in uraw]
        w = [F(v, 60) for v in wraw]
        rel, _ = merge_duplicates(induce(u, w, cap))
        lab = classify_regions(rel)
        assert lab.ok, lab.reason
        ctx = ScanContext(rel)
        assert octuple_witness(ctx, (lab.in_se,) * 8) is None
        assert octuple_witness(ctx, (lab.in_nw,) * 8) is None


def test_strict_sides_contained_in_regions():
    u = [F(v, 60) for v in [4, 18, 35, 52]]
    w = [F(v, 60) for v in [9, 26, 43, 57]]
    rel = induce(u, w, Capacity.two(F(1, 2), F(1, 4)))
    lab = classify_regions(rel)
    for i in range(4):
        for j in range(4):
            if u[i] > w[j]:
                assert lab.in_se[i, j]
            elif u[i] < w[j]:
                assert lab.in_nw[i, j]


def test_transpose_swaps_regions():
    rel = induce(
        [F(v, 60) for v in [3, 17, 24, 40]],
        [F(v, 60) for v in [8, 21, 33]],
        Capacity.two(F(1, 2), F(1, 4)),
    )
    lab = classify_regions(rel)
    lab_t = classify_regions(transpose_relation(rel))
    assert (lab_t.in_se == lab.in_nw.T).all()
    assert (lab_t.in_nw == lab.in_se.T).all()
    assert (lab_t.se_pass == lab.nw_pass.T).all()
    assert (lab_t.se_ext == lab.nw_ext.T).all()
    assert lab_t.essential_se == lab.essential_nw[::-1]
    assert lab_t.essential_nw == lab.essential_se[::-1]


def test_solvability_gaps_counts_bracketed_misses():
    # Values 0, 2, 3, 5: the off-diagonal cells bracket each other's
    # levels without hitting them, once per axis.
    rel = induce([0, 3], [0, 2], Capacity.two(F(1, 2), F(1, 2)))
    assert solvability_gaps(rel) == 2
    # A perfectly meshed grid has no gaps.
    rel2 = induce([0, 1], [0, 1], Capacity.two(F(1, 2), F(1, 2)))
    assert solvability_gaps(rel2) == 0


def test_profile_summarizes_counts():
    lab = classify_regions(interleaved(0, 0))
    prof = lab.profile()
    assert prof["se"] == (False, True)
    assert prof["nw"] == (True, False)
    assert prof["theta_count"] == 2
    assert prof["se_count"] == 5
    assert prof["nw_count"] == 6
