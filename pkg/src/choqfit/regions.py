"""Splitting a grid into its two aggregation regimes.

For a relation that aggregates two criteria by a Choquet-type rule,
the grid splits into a south-east part (first coordinate at least as
urgent as the second) and a north-west part, with a frontier where the
two coincide.  The split is recovered from preference data alone by
probing cancellation on cones: a south-east cone anchored at z holds
the points weakly above z on axis 1 and weakly below it on axis 2, and
inside a single regime cancellation cannot fail.

Cone pass tables feed both the cone-condition checker and the fitter,
so classification lives here rather than next to either consumer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from choqfit.relation import CoordinateOrder, PreferenceRelation, coordinate_order
from choqfit.scans import ScanContext, octuple_witness

__all__ = [
    "cone_mask",
    "RegionLabeling",
    "classify_regions",
    "essential_on",
    "solvability_gaps",
]


def cone_mask(
    ord1: CoordinateOrder,
    ord2: CoordinateOrder,
    z: tuple[int, int],
    kind: str,
) -> np.ndarray:
    """Membership mask of the cone anchored at z.

    "se": first coordinate weakly above z's, second weakly below.
    "nw": the mirror image.
    """
    z1, z2 = z
    if kind == "se":
        return ord1.geq[:, z1][:, None] & ord2.geq[z2, :][None, :]
    if kind == "nw":
        return ord1.geq[z1, :][:, None] & ord2.geq[:, z2][None, :]
    raise ValueError(f"cone kind must be 'se' or 'nw', got {kind!r}")


def essential_on(rel: PreferenceRelation, mask: np.ndarray, axis: int) -> bool:
    """Whether an axis matters inside the masked point set.

    True when the set contains two points that differ only on this axis
    and are strictly ranked.
    """
    c4 = rel.cmp4
    if axis == 1:
        same_col = c4[:, np.arange(rel.m2), :, np.arange(rel.m2)]  # [p, a, b]
        both = mask.T[:, :, None] & mask.T[:, None, :]
        return bool(((same_col != 0) & both).any())
    if axis == 2:
        same_row = c4[np.arange(rel.m1), :, np.arange(rel.m1), :]  # [a, p, q]
        both = mask[:, :, None] & mask[:, None, :]
        return bool(((same_row != 0) & both).any())
    raise ValueError(f"axis must be 1 or 2, got {axis}")


@dataclass(frozen=True)
class RegionLabeling:
    """Result of :func:`classify_regions`.

    Attributes
    ----------
    ok:
        True when every point received at least one region.
    reason:
        Empty when ok; otherwise why classification is unusable
        (incomplete axis order, or points left unlabelled).
    orders_complete:
        Whether both coordinate orders were complete.  When False the
        masks are all empty and nothing downstream can use them.
    in_se, in_nw:
        Boolean (m1, m2) membership masks.  Points may carry both
        labels; the overlap is the frontier.
    rim_se, rim_nw:
        Grid rims where a cone of that kind cannot have a qualifying
        anchor: top first-axis levels or bottom second-axis levels for
        south-east, mirrored for north-west.  The extreme-point
        membership clauses act on these rows and columns.
    se_ext, nw_ext:
        Extreme frontier points: on the frontier and on the matching
        rim.  The fitter assigns their values last, after the interior
        is pinned.
    se_pass, nw_pass:
        For each anchor z, whether triple cancellation holds on the
        cone of that kind anchored there.  Kept because the cone
        condition checker and the fitter both reuse them.
    essential_se, essential_nw:
        Pairs (axis 1, axis 2) of essentiality flags on the working
        regions.
    essential_se_full, essential_nw_full:
        The same flags on the full painted regions; only of interest
        when comparing against the raw membership masks.
    """

    ok: bool
    reason: str
    orders_complete: bool
    in_se: np.ndarray
    in_nw: np.ndarray
    rim_se: np.ndarray
    rim_nw: np.ndarray
    se_ext: np.ndarray
    nw_ext: np.ndarray
    se_pass: np.ndarray
    nw_pass: np.ndarray
    essential_se: tuple[bool, bool]
    essential_nw: tuple[bool, bool]
    essential_se_full: tuple[bool, bool]
    essential_nw_full: tuple[bool, bool]

    @property
    def theta(self) -> np.ndarray:
        """Frontier mask: points carrying both labels."""
        return self.in_se & self.in_nw

    @property
    def se_work(self) -> np.ndarray:
        """Points whose south-east label is beyond doubt.

        Finite data can paint a point into both regions: cancellation
        on a thin cone (two effective rows or columns, say) cannot
        separate the two aggregation formulas, so the cone passes and
        its points pick up a label the model may not support.  Such
        over-painted points always end up carrying both labels, because
        a point governed by the other formula is painted by its own
        cone as well whenever that cone has a qualifying anchor, and by
        the extreme-point clauses on the rims where it does not.  The
        working mask therefore keeps only exclusively-labelled points
        off the opposite rim; those are in the region under every
        consistent reading of the data.
        """
        return self.in_se & ~self.in_nw & ~self.rim_nw

    @property
    def nw_work(self) -> np.ndarray:
        """Points whose north-west label is beyond doubt (see se_work)."""
        return self.in_nw & ~self.in_se & ~self.rim_se

    @property
    def theta_work(self) -> np.ndarray:
        """Non-extreme frontier points (reference-pair candidates)."""
        return self.theta & ~self.se_ext & ~self.nw_ext

    @property
    def unlabelled(self) -> list[tuple[int, int]]:
        return [tuple(map(int, ij)) for ij in np.argwhere(~(self.in_se | self.in_nw))]

    def profile(self) -> dict:
        """Essentiality profile, the branch selector for fitting."""
        return {
            "se": self.essential_se,
            "nw": self.essential_nw,
            "theta_count": int(self.theta.sum()),
            "se_count": int(self.in_se.sum()),
            "nw_count": int(self.in_nw.sum()),
        }


def classify_regions(rel: PreferenceRelation) -> RegionLabeling:
    """Label every point south-east, north-west, or both.

    A point is south-east when some cancellation-passing south-east
    cone with a non-extreme anchor contains it.  Points on the
    south-east rim of the grid (top axis-1 level or bottom axis-2
    level) cannot sit strictly inside such a cone, so they get the
    label by default unless some other point of their own south-east
    cone generates a passing north-west cone, which would pull them
    the other way.  The north-west side mirrors this.
    """
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    empty = np.zeros((rel.m1, rel.m2), dtype=bool)
    if not ord1.complete or not ord2.complete:
        axis = 1 if not ord1.complete else 2
        off = (False, False)
        return RegionLabeling(
            False,
            f"axis {axis} order incomplete: same-partner comparisons conflict",
            False,
            empty, empty, empty, empty, empty, empty, empty, empty,
            off, off, off, off,
        )

    m1, m2 = rel.m1, rel.m2
    ctx = ScanContext(rel)
    se_pass = np.zeros((m1, m2), dtype=bool)
    nw_pass = np.zeros((m1, m2), dtype=bool)
    se_cones: dict[tuple[int, int], np.ndarray] = {}
    nw_cones: dict[tuple[int, int], np.ndarray] = {}
    for z1 in range(m1):
        for z2 in range(m2):
            se = cone_mask(ord1, ord2, (z1, z2), "se")
            nw = cone_mask(ord1, ord2, (z1, z2), "nw")
            se_cones[z1, z2] = se
            nw_cones[z1, z2] = nw
            se_pass[z1, z2] = octuple_witness(ctx, (se,) * 8) is None
            nw_pass[z1, z2] = octuple_witness(ctx, (nw,) * 8) is None

    max1 = ord1.maximal()
    min1 = ord1.minimal()
    max2 = ord2.maximal()
    min2 = ord2.minimal()

    in_se = np.zeros((m1, m2), dtype=bool)
    in_nw = np.zeros((m1, m2), dtype=bool)
    for z1 in range(m1):
        for z2 in range(m2):
            if se_pass[z1, z2] and not max1[z1] and not min2[z2]:
                in_se |= se_cones[z1, z2]
            if nw_pass[z1, z2] and not min1[z1] and not max2[z2]:
                in_nw |= nw_cones[z1, z2]

    # Rim points: included unless a point of their own cone anchors a
    # passing cone of the opposite kind.
    for x1 in range(m1):
        for x2 in range(m2):
            if max1[x1] or min2[x2]:
                others = se_cones[x1, x2].copy()
                others[x1, x2] = False
                if not (others & nw_pass).any():
                    in_se[x1, x2] = True
            if min1[x1] or max2[x2]:
                others = nw_cones[x1, x2].copy()
                others[x1, x2] = False
                if not (others & se_pass).any():
                    in_nw[x1, x2] = True

    theta = in_se & in_nw
    rim_se = max1[:, None] | min2[None, :]
    rim_nw = min1[:, None] | max2[None, :]
    se_ext = theta & rim_se
    nw_ext = theta & rim_nw
    se_work = in_se & ~in_nw & ~rim_nw
    nw_work = in_nw & ~in_se & ~rim_se

    labeling = RegionLabeling(
        ok=bool((in_se | in_nw).all()),
        reason="",
        orders_complete=True,
        in_se=in_se,
        in_nw=in_nw,
        rim_se=rim_se,
        rim_nw=rim_nw,
        se_ext=se_ext,
        nw_ext=nw_ext,
        se_pass=se_pass,
        nw_pass=nw_pass,
        essential_se=(essential_on(rel, se_work, 1), essential_on(rel, se_work, 2)),
        essential_nw=(essential_on(rel, nw_work, 1), essential_on(rel, nw_work, 2)),
        essential_se_full=(essential_on(rel, in_se, 1), essential_on(rel, in_se, 2)),
        essential_nw_full=(essential_on(rel, in_nw, 1), essential_on(rel, in_nw, 2)),
    )
    if not labeling.ok:
        pts = ", ".join(rel.space.label(i, j) for i, j in labeling.unlabelled[:4])
        object.__setattr__(labeling, "reason", f"points in neither region: {pts}")
    return labeling


def solvability_gaps(rel: PreferenceRelation) -> int:
    """Count bracketed-but-unsolvable targets, both axes.

    A gap on axis 1 is a pair (target point z, column p) where some
    point of column p is weakly above z and some weakly below, yet no
    point of the column is indifferent to z.  Finite grids almost
    always have gaps; the count is reported as a diagnostic, not an
    axiom verdict.
    """
    c4 = rel.cmp4
    m1, m2 = rel.m1, rel.m2
    gaps = 0
    for zi in range(m1):
        for zj in range(m2):
            for p in range(m2):
                col = c4[:, p, zi, zj]
                if (col >= 0).any() and (col <= 0).any() and not (col == 0).any():
                    gaps += 1
            for i in range(m1):
                row = c4[i, :, zi, zj]
                if (row >= 0).any() and (row <= 0).any() and not (row == 0).any():
                    gaps += 1
    return gaps
