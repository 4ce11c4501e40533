"""Fitting a two-criterion Choquet model to finite preference data.

The constructive route: split the grid into its two aggregation
regimes, build an additive scale per cancelling cone, join the cones
into one scale per region, align the two regional scales on their
shared labels, and read the capacity off the aligned normalization.
Regimes where one axis stops mattering on a region take ordinal
shortcuts instead of feasibility programming.

Finite data cannot always be trusted to reveal its regime: thin cones
pass cancellation for the wrong reason and a region can look richer
than it is.  The orchestrator therefore treats each construction as a
candidate and gates it by exact replay; a branch that fails to
reproduce every pairwise comparison is abandoned and the next
plausible construction runs.  A misread profile costs time, never
correctness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from choqfit.capacity import Capacity, choquet, validate_capacity
from choqfit.feasible import FeasibilitySystem, Row, order_system, solve_main
from choqfit.regions import RegionLabeling, classify_regions, cone_mask
from choqfit.relation import (
    CoordinateOrder,
    PreferenceRelation,
    ProductSpace,
    coordinate_order,
)
from choqfit.scans import transpose_relation

__all__ = [
    "AdditiveCone",
    "AgreementReport",
    "FitError",
    "Representation",
    "agreement",
    "align_regions",
    "extend_extremes",
    "extract_capacity",
    "fit",
    "fit_cone_additive",
    "fit_one_essential",
    "join_cones",
    "representation_from_dict",
    "uniqueness_case",
]


class FitError(Exception):
    """A fitting stage failed on this data.

    Attributes
    ----------
    stage:
        Where the pipeline stopped: "classification", "cone", "join",
        "alignment", "pinning", "extension", or "representation".
    witness:
        Stage-specific payload locating the failure (offending points,
        labels, residuals), or None when the message says it all.
    """

    def __init__(self, stage: str, message: str, witness=None):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
        self.witness = witness


@dataclass(frozen=True)
class AdditiveCone:
    """Additive values fitted on one cancelling cone.

    Attributes
    ----------
    members:
        Boolean (m1, m2) mask of the fitted points.
    anchor:
        Grid position the cone hangs from, or None for ad-hoc masks.
    v1, v2:
        Fitted value per axis-1 / axis-2 level present in the mask.
        Any feasible point of the order system; only differences and
        their signs carry meaning.
    """

    members: np.ndarray
    anchor: tuple[int, int] | None
    v1: dict[int, float]
    v2: dict[int, float]


@dataclass(frozen=True)
class Representation:
    """Fitted per-axis values plus the capacity aggregating them.

    The model value of a point is the Choquet integral of
    (f1[i], f2[j]) against the capacity, which works out to one
    weighted sum where f1 is on top and the mirrored one where f2 is.

    Attributes
    ----------
    space:
        Labelled grid the values refer to.
    f1, f2:
        One value per axis level, in storage order.
    capacity:
        Two-criterion capacity; its singleton weights are the fitted
        nu values.
    k:
        Second-axis unit in first-axis units on the south-east side,
        or None when the south-east region pins no such ratio (a
        single essential axis there).
    lam:
        Ratio of the north-west second-axis scale to the south-east
        one, or None when undefined (second axis fully dominant on
        the north-west side).
    labeling:
        Region split of the data the fit was gated against.
    branch:
        Name of the construction that produced the values.
    """

    space: ProductSpace
    f1: tuple[float, ...]
    f2: tuple[float, ...]
    capacity: Capacity
    k: float | None
    lam: float | None
    labeling: RegionLabeling
    branch: str

    def value(self, i: int, j: int) -> float:
        return choquet(self.capacity, (self.f1[i], self.f2[j]))

    def values(self) -> np.ndarray:
        """Model value of every grid point, shape (m1, m2)."""
        return np.array(
            [[self.value(i, j) for j in range(self.space.m2)] for i in range(self.space.m1)],
            dtype=float,
        )

    def to_dict(self) -> dict:
        """JSON document form: values, scale ratios, nu, region tags."""
        lab = self.labeling
        regions = {}
        for i in range(self.space.m1):
            for j in range(self.space.m2):
                if lab.in_se[i, j] and lab.in_nw[i, j]:
                    tag = "both"
                elif lab.in_se[i, j]:
                    tag = "se"
                else:
                    tag = "nw"
                regions[self.space.label(i, j)] = tag
        return {
            "f1": {lbl: float(v) for lbl, v in zip(self.space.x1, self.f1)},
            "f2": {lbl: float(v) for lbl, v in zip(self.space.x2, self.f2)},
            "k": None if self.k is None else float(self.k),
            "lambda": None if self.lam is None else float(self.lam),
            "nu": {"1": float(self.capacity.nu1), "2": float(self.capacity.nu2)},
            "regions": regions,
        }


def representation_from_dict(doc: Mapping, rel: PreferenceRelation) -> Representation:
    """Rebuild a representation from its document form, for verification.

    The labels must match the relation's; region tags are recomputed
    from the relation rather than trusted from the file.
    """
    for key in ("f1", "f2", "nu"):
        if key not in doc:
            raise ValueError(f"representation document missing key {key!r}")
    missing1 = [lbl for lbl in rel.space.x1 if lbl not in doc["f1"]]
    missing2 = [lbl for lbl in rel.space.x2 if lbl not in doc["f2"]]
    if missing1 or missing2:
        raise ValueError(f"representation labels do not match the relation: missing {missing1 + missing2}")
    f1 = tuple(float(doc["f1"][lbl]) for lbl in rel.space.x1)
    f2 = tuple(float(doc["f2"][lbl]) for lbl in rel.space.x2)
    cap = Capacity.two(float(doc["nu"]["1"]), float(doc["nu"]["2"]))
    check = validate_capacity(cap)
    if not check:
        raise ValueError(f"invalid capacity in representation ({check.kind}): {check.detail}")
    k = doc.get("k")
    lam = doc.get("lambda")
    return Representation(
        space=rel.space,
        f1=f1,
        f2=f2,
        capacity=cap,
        k=None if k is None else float(k),
        lam=None if lam is None else float(lam),
        labeling=classify_regions(rel),
        branch="loaded",
    )


# ---------------------------------------------------------------------------
# replay gate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AgreementReport:
    """How well fitted values reproduce the data, pair by pair.

    Attributes
    ----------
    fraction:
        Agreeing ordered pairs over all ordered pairs (diagonal
        excluded); 1.0 means exact replay.
    checked:
        Number of ordered pairs compared.
    first_mismatch:
        Lexicographically first disagreeing pair with both verdicts
        and both model values, or None.
    """

    fraction: float
    checked: int
    first_mismatch: dict | None


def agreement(rel: PreferenceRelation, rep: Representation, tol: float = 1e-7) -> AgreementReport:
    """Brute-force comparison of the model order against the data.

    Model values within ``tol`` (relative to the largest magnitude)
    count as tied; fitted scales separate strict pairs by solver
    margins orders of magnitude above that.
    """
    vals = rep.values().ravel()
    eps = tol * max(1.0, float(np.max(np.abs(vals))) if vals.size else 1.0)
    diff = vals[:, None] - vals[None, :]
    pred = np.zeros_like(rel.cmp)
    pred[diff > eps] = 1
    pred[diff < -eps] = -1
    ok = pred == rel.cmp
    n = rel.space.size
    total = n * (n - 1)
    agree = int(ok.sum()) - n
    first = None
    bad = np.argwhere(~ok)
    if len(bad):
        a, b = (int(v) for v in bad[0])
        first = {
            "x": rel.space.label(*rel.space.pos(a)),
            "y": rel.space.label(*rel.space.pos(b)),
            "data": int(rel.cmp[a, b]),
            "fitted": int(pred[a, b]),
            "value_x": float(vals[a]),
            "value_y": float(vals[b]),
        }
    return AgreementReport(agree / total if total else 1.0, total, first)


# ---------------------------------------------------------------------------
# per-cone additive scales
# ---------------------------------------------------------------------------


def fit_cone_additive(
    rel: PreferenceRelation,
    cone_members: np.ndarray,
    delta: Fraction = Fraction(1),
    anchor: tuple[int, int] | None = None,
) -> AdditiveCone:
    """Solve the additive order system on one cone.

    Any feasible point is accepted; strict preferences are separated
    by at least ``delta``.  Infeasibility means cancellation or
    transitivity fails inside the mask and is raised as a cone-stage
    error carrying the variables involved.
    """
    system, (rows_used, cols_used) = order_system(rel, cone_members, delta)
    res = solve_main(system)
    if not res.feasible:
        where = f" anchored at {rel.space.label(*anchor)}" if anchor is not None else ""
        raise FitError(
            "cone",
            f"no additive scale on the cone{where}",
            witness={"rows": list(rows_used), "cols": list(cols_used)},
        )
    pt = res.point if res.point is not None else ()
    v1 = {r: float(pt[p]) for p, r in enumerate(rows_used)}
    v2 = {c: float(pt[len(rows_used) + p]) for p, c in enumerate(cols_used)}
    return AdditiveCone(np.array(cone_members, dtype=bool), anchor, v1, v2)


def _maximal_cones(
    labeling: RegionLabeling,
    ord1: CoordinateOrder,
    ord2: CoordinateOrder,
    kind: str,
    interior: np.ndarray,
) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Inclusion-maximal passing cones of one kind, clipped to a mask."""
    pass_tab = labeling.se_pass if kind == "se" else labeling.nw_pass
    if kind == "se":
        bad1, bad2 = ord1.maximal(), ord2.minimal()
    else:
        bad1, bad2 = ord1.minimal(), ord2.maximal()
    m1, m2 = interior.shape
    cones: list[tuple[tuple[int, int], np.ndarray]] = []
    for z1 in range(m1):
        for z2 in range(m2):
            if bad1[z1] or bad2[z2] or not pass_tab[z1, z2]:
                continue
            m = cone_mask(ord1, ord2, (z1, z2), kind) & interior
            if m.any():
                cones.append(((z1, z2), m))
    cones.sort(key=lambda zm: -int(zm[1].sum()))
    keep: list[tuple[tuple[int, int], np.ndarray]] = []
    for z, m in cones:
        if any((m <= km).all() for _, km in keep):
            continue
        keep.append((z, m))
    return keep


def join_cones(
    rel: PreferenceRelation,
    cones: Sequence[AdditiveCone],
    kind: str,
    delta: Fraction = Fraction(1),
    tol: float = 1e-7,
    target: np.ndarray | None = None,
) -> tuple[dict[int, float], dict[int, float]]:
    """One scale per region from many per-cone scales.

    The input scales are first checked pairwise: on every overlap the
    two cones' values must agree up to a common positive rescaling
    with per-axis offsets, else the pair is named in the error.  The
    output scale is then re-solved over the union (or over ``target``
    when the caller wants rim points the cones missed included), which
    keeps it independent of per-cone solver arbitrariness.
    """
    if not cones:
        raise FitError("join", f"no {kind} cones to join")
    for a in range(len(cones)):
        for b in range(a + 1, len(cones)):
            _check_overlap(cones[a], cones[b], tol)
    if len(cones) == 1 and target is None:
        return dict(cones[0].v1), dict(cones[0].v2)
    if target is not None:
        union = np.array(target, dtype=bool)
    else:
        union = np.zeros_like(cones[0].members)
        for cone in cones:
            union |= cone.members
    system, (rows_used, cols_used) = order_system(rel, union, delta)
    res = solve_main(system)
    if not res.feasible:
        raise FitError(
            "join",
            f"cones agree pairwise but admit no common {kind} scale",
            witness={"anchors": [c.anchor for c in cones]},
        )
    pt = res.point if res.point is not None else ()
    v1 = {r: float(pt[p]) for p, r in enumerate(rows_used)}
    v2 = {c: float(pt[len(rows_used) + p]) for p, c in enumerate(cols_used)}
    return v1, v2


def _check_overlap(ca: AdditiveCone, cb: AdditiveCone, tol: float) -> None:
    """Require the two scales to order the overlap points identically.

    Additive scales fitted on separate masks are free up to much more
    than an affine map, so the only input-level consistency a join may
    demand is ordinal: on the shared points, equal values in one scale
    must be equal in the other and strict gaps must keep their sign.
    """
    overlap = ca.members & cb.members
    if int(overlap.sum()) < 2:
        return
    pts = [tuple(int(v) for v in ij) for ij in np.argwhere(overlap)]
    va = np.array([ca.v1[i] + ca.v2[j] for i, j in pts])
    vb = np.array([cb.v1[i] + cb.v2[j] for i, j in pts])

    def signs(vals: np.ndarray) -> np.ndarray:
        band = tol * max(1.0, float(np.max(np.abs(vals))))
        diff = vals[:, None] - vals[None, :]
        out = np.zeros(diff.shape, dtype=np.int8)
        out[diff > band] = 1
        out[diff < -band] = -1
        return out

    bad = np.argwhere(signs(va) != signs(vb))
    if len(bad):
        x, y = pts[int(bad[0][0])], pts[int(bad[0][1])]
        raise FitError(
            "join",
            "cone scales disagree on their overlap",
            witness={"anchors": (ca.anchor, cb.anchor), "x": x, "y": y},
        )


# ---------------------------------------------------------------------------
# aligning the two regional scales
# ---------------------------------------------------------------------------


def _reference_pair(
    mask: np.ndarray, ord1: CoordinateOrder, ord2: CoordinateOrder
) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Lexicographically first pair in the mask increasing strictly on both axes."""
    pts = [tuple(int(v) for v in ij) for ij in np.argwhere(mask)]
    s1, s2 = ord1.strict, ord2.strict
    for a in pts:
        for b in pts:
            if s1[b[0], a[0]] and s2[b[1], a[1]]:
                return a, b
    return None


def align_regions(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    vse: tuple[Mapping[int, float], Mapping[int, float]],
    vnw: tuple[Mapping[int, float], Mapping[int, float]],
    tol: float = 1e-7,
    ref_mask: np.ndarray | None = None,
) -> tuple[dict[int, float], dict[int, float], float, float]:
    """Merge the two regional scales into one (f1, f2, k, lambda).

    Both scales are zeroed at the first frontier reference point
    (drawn from ``ref_mask`` when given, else from the non-extreme
    frontier).  The north-west axis-1 values are matched onto the
    south-east ones by a least-squares ratio over the common rows
    (exact on consistent data); lambda is the analogous ratio on the
    common columns, zero when the north-west side carries no
    second-axis spread.  The unit is the south-east axis-1 value at
    the second reference point, and k is the second-axis value there
    in those units.
    """
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    pair = _reference_pair(
        labeling.theta_work if ref_mask is None else ref_mask, ord1, ord2
    )
    if pair is None:
        raise FitError(
            "alignment",
            "no frontier reference pair; the relation should be globally additive",
        )
    r0, r1 = pair
    v1se, v2se = vse
    v1nw, v2nw = vnw
    for lbl, scale_map, name in (
        (r0[0], v1se, "axis-1 south-east"),
        (r1[0], v1se, "axis-1 south-east"),
        (r0[1], v2se, "axis-2 south-east"),
        (r1[1], v2se, "axis-2 south-east"),
        (r0[0], v1nw, "axis-1 north-west"),
        (r0[1], v2nw, "axis-2 north-west"),
    ):
        if lbl not in scale_map:
            raise FitError(
                "alignment",
                f"reference label {lbl} missing from the {name} scale",
                witness={"r0": r0, "r1": r1},
            )
    se1 = {i: v - v1se[r0[0]] for i, v in v1se.items()}
    se2 = {j: v - v2se[r0[1]] for j, v in v2se.items()}
    nw1 = {i: v - v1nw[r0[0]] for i, v in v1nw.items()}
    nw2 = {j: v - v2nw[r0[1]] for j, v in v2nw.items()}

    common1 = sorted(set(se1) & set(nw1))
    xs = np.array([nw1[i] for i in common1], dtype=float)
    ys = np.array([se1[i] for i in common1], dtype=float)
    spread1 = max(1.0, float(np.max(np.abs(ys))) if len(ys) else 0.0)
    den = float(xs @ xs)
    if den <= (tol * spread1) ** 2:
        if float(ys @ ys) > (tol * spread1) ** 2:
            raise FitError(
                "alignment",
                "axis-1 scales share no spread to align on",
                witness={"rows": common1},
            )
        ratio = 1.0
    else:
        ratio = float(xs @ ys) / den
        if ratio <= 0:
            raise FitError(
                "alignment",
                "regional axis-1 scales are order-reversed",
                witness={"rows": common1, "ratio": ratio},
            )
        resid = np.abs(ys - ratio * xs)
        if float(np.max(resid)) > tol * spread1:
            worst = common1[int(np.argmax(resid))]
            raise FitError(
                "alignment",
                "axis-1 scales do not match affinely on the common rows",
                witness={"row": worst, "residual": float(np.max(resid))},
            )
    nw1 = {i: ratio * v for i, v in nw1.items()}
    nw2 = {j: ratio * v for j, v in nw2.items()}

    common2 = sorted(set(se2) & set(nw2))
    if not common2:
        raise FitError("alignment", "empty axis-2 common domain: lambda unidentifiable")
    xs2 = np.array([se2[j] for j in common2], dtype=float)
    ys2 = np.array([nw2[j] for j in common2], dtype=float)
    spread2 = max(1.0, float(np.max(np.abs(xs2))), float(np.max(np.abs(ys2))))
    den2 = float(xs2 @ xs2)
    if float(ys2 @ ys2) <= (tol * spread2) ** 2:
        lam = 0.0
    elif den2 <= (tol * spread2) ** 2:
        raise FitError(
            "alignment",
            "axis-2 common domain has no south-east spread: lambda unidentifiable",
            witness={"cols": common2},
        )
    else:
        lam = float(xs2 @ ys2) / den2
        if lam <= 0:
            raise FitError(
                "alignment",
                "regional axis-2 scales are order-reversed",
                witness={"cols": common2, "ratio": lam},
            )
        resid2 = np.abs(ys2 - lam * xs2)
        if float(np.max(resid2)) > tol * spread2:
            worst = common2[int(np.argmax(resid2))]
            raise FitError(
                "alignment",
                "axis-2 scales are not proportional on the common columns",
                witness={"col": worst, "residual": float(np.max(resid2))},
            )

    unit = se1[r1[0]]
    if unit <= tol:
        raise FitError(
            "alignment",
            "reference pair does not increase on axis 1",
            witness={"r0": r0, "r1": r1},
        )
    k = se2[r1[1]] / unit
    if k <= tol:
        raise FitError(
            "alignment",
            "reference pair does not increase on axis 2",
            witness={"r0": r0, "r1": r1},
        )
    phi1 = {i: v / unit for i, v in se1.items()}
    for i, v in nw1.items():
        phi1.setdefault(i, v / unit)
    phi2 = {j: v / (unit * k) for j, v in se2.items()}
    if lam > 0:
        for j, v in nw2.items():
            phi2.setdefault(j, v / (unit * lam * k))
    return phi1, phi2, float(k), float(lam)


def extract_capacity(
    k: float | None,
    lam: float | None,
    essential_se: tuple[bool, bool],
    essential_nw: tuple[bool, bool],
) -> Capacity:
    """Capacity from the aligned scale ratios and essentiality profile.

    With both axes essential on a region, the singleton weights are
    nu({1}) = 1/(1+k) and nu({2}) = lambda*k/(1+lambda*k); a region
    with a single essential axis pins its weight to 1 when that axis
    is the region's own (axis 1 south-east, axis 2 north-west) and to
    0 otherwise.
    """
    e1se, e2se = essential_se
    e1nw, e2nw = essential_nw
    if e1se and e2se:
        if k is None or k <= 0:
            raise ValueError("k must be positive when both axes are essential on the south-east region")
        nu1 = 1.0 / (1.0 + k)
    elif e1se or e2se:
        nu1 = 1.0 if e1se else 0.0
    else:
        raise ValueError("a region with no essential axis admits no capacity")
    if e1nw and e2nw:
        if lam is None or lam < 0 or k is None:
            raise ValueError("lambda must be nonnegative when both axes are essential on the north-west region")
        nu2 = (lam * k) / (1.0 + lam * k)
    elif e1nw or e2nw:
        nu2 = 1.0 if e2nw else 0.0
    else:
        raise ValueError("a region with no essential axis admits no capacity")
    cap = Capacity.two(nu1, nu2)
    check = validate_capacity(cap)
    assert check.ok, f"extracted capacity invalid ({check.kind}): {check.detail}"
    return cap


# ---------------------------------------------------------------------------
# extreme frontier points
# ---------------------------------------------------------------------------


def _global_classes(rel: PreferenceRelation) -> np.ndarray:
    """Indifference-class index per point, 0 = worst.  Assumes a weak order."""
    beats = (rel.cmp > 0).sum(axis=1)
    _, inv = np.unique(beats, return_inverse=True)
    return inv.reshape(rel.m1, rel.m2)


def _class_targets(
    rel: PreferenceRelation,
    f1: Mapping[int, float],
    f2: Mapping[int, float],
    cap: Capacity,
    tol: float,
) -> dict[int, float]:
    """Model value that each global indifference class must land on.

    Classes with at least one fully-valued point inherit its value
    (tied points must agree within tolerance); classes seen only at
    unvalued points are interpolated between their neighbours, with a
    representative gap beyond the ends.
    """
    cls = _global_classes(rel)
    n_classes = int(cls.max()) + 1
    targets: dict[int, float] = {}
    for i in range(rel.m1):
        for j in range(rel.m2):
            if i not in f1 or j not in f2:
                continue
            v = float(choquet(cap, (f1[i], f2[j])))
            c = int(cls[i, j])
            if c in targets:
                if abs(targets[c] - v) > tol * max(1.0, abs(v)):
                    raise FitError(
                        "extension",
                        "tied points disagree in fitted value",
                        witness={"point": rel.space.label(i, j), "values": (targets[c], v)},
                    )
            else:
                targets[c] = v
    if not targets:
        for c in range(n_classes):
            targets[c] = float(c)
        return targets
    known = sorted(targets)
    gaps = [targets[b] - targets[a] for a, b in zip(known, known[1:])]
    step = min((g / (b - a) for g, (a, b) in zip(gaps, zip(known, known[1:]))), default=1.0)
    step = max(step, tol) if step > 0 else 1.0
    for c in range(n_classes):
        if c in targets:
            continue
        below = [d for d in known if d < c]
        above = [d for d in known if d > c]
        if below and above:
            lo, hi = max(below), min(above)
            frac = (c - lo) / (hi - lo)
            targets[c] = targets[lo] + frac * (targets[hi] - targets[lo])
        elif below:
            targets[c] = targets[max(below)] + step * (c - max(below))
        else:
            targets[c] = targets[min(above)] - step * (min(above) - c)
    return targets


def extend_extremes(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    f1: Mapping[int, float],
    f2: Mapping[int, float],
    cap: Capacity,
    tol: float = 1e-7,
) -> tuple[dict[int, float], dict[int, float]]:
    """Assign values to labels seen only at extreme frontier points.

    An extreme frontier point whose partner label already has a value
    pins the missing one to it (the frontier equality is the tightest
    admissible choice in every essentiality profile).  A point with
    both labels unvalued gets the value its global indifference class
    must land on, equal on both axes.  Labels valued already are never
    touched.
    """
    f1 = dict(f1)
    f2 = dict(f2)
    ext = labeling.se_ext | labeling.nw_ext
    pts = [tuple(int(v) for v in ij) for ij in np.argwhere(ext)]
    changed = True
    while changed:
        changed = False
        for i, j in pts:
            if i in f1 and j not in f2:
                f2[j] = f1[i]
                changed = True
            elif j in f2 and i not in f1:
                f1[i] = f2[j]
                changed = True
    orphans = [(i, j) for i, j in pts if i not in f1 and j not in f2]
    if orphans:
        targets = _class_targets(rel, f1, f2, cap, tol)
        cls = _global_classes(rel)
        for i, j in orphans:
            v = targets[int(cls[i, j])]
            f1.setdefault(i, v)
            f2.setdefault(j, v)
    return f1, f2


# ---------------------------------------------------------------------------
# single-essential-axis constructions
# ---------------------------------------------------------------------------


def _check_theta_pinning(rel: PreferenceRelation, labeling: RegionLabeling) -> None:
    """Frontier points must order the two axes the same way.

    Every frontier point of a non-additive model forces its two
    coordinate values equal, so two frontier-labelled points ranked
    oppositely by the two axis orders admit no pair of monotone value
    functions.  Run only after the additive branch has failed: region
    labels can over-paint, so this is a diagnosis for exhausted fits,
    not an entry gate.
    """
    pts = [tuple(int(v) for v in ij) for ij in np.argwhere(labeling.theta)]
    s1 = coordinate_order(rel, 1).strict
    s2 = coordinate_order(rel, 2).strict
    for a in pts:
        for b in pts:
            if s1[a[0], b[0]] and s2[b[1], a[1]]:
                raise FitError(
                    "pinning",
                    "frontier points order the axes oppositely",
                    witness={"x": rel.space.label(*a), "y": rel.space.label(*b)},
                )


def _fit_ladder(rel: PreferenceRelation, labeling: RegionLabeling, kind: str) -> Representation:
    """Exact construction when each region has one essential axis.

    Uses the global indifference classes as the value ladder: each
    axis level takes the class of its point at the best partner level
    (worst for the max regime).  The min (max) of the two resulting
    functions reproduces the class of every point exactly, because the
    partner chosen never caps (never lifts) the level being valued.
    """
    for name, flags in (("south-east", labeling.essential_se), ("north-west", labeling.essential_nw)):
        if flags == (True, True):
            raise FitError(
                "classification",
                f"the {name} working region shows two essential axes; no min or max regime fits",
            )
    cls = _global_classes(rel).astype(float)
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    if kind == "min":
        i_star = int(np.flatnonzero(ord1.maximal())[0])
        j_star = int(np.flatnonzero(ord2.maximal())[0])
        cap = Capacity.two(0.0, 0.0)
    elif kind == "max":
        i_star = int(np.flatnonzero(ord1.minimal())[0])
        j_star = int(np.flatnonzero(ord2.minimal())[0])
        cap = Capacity.two(1.0, 1.0)
    else:
        raise ValueError(f"ladder kind must be 'min' or 'max', got {kind!r}")
    f1 = tuple(float(cls[i, j_star]) for i in range(rel.m1))
    f2 = tuple(float(cls[i_star, j]) for j in range(rel.m2))
    return Representation(rel.space, f1, f2, cap, None, None, labeling, f"ladder-{kind}")


def _fit_mixed(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    nw_axis: int,
    delta: Fraction,
    tol: float,
) -> Representation:
    """Two-essential south-east side plus a one-essential north-west side.

    The south-east region is fitted additively and normalized at a
    frontier reference pair, which estimates k and hence nu({1}); the
    north-west weight is 0 or 1 according to which axis survives
    there.  The additive scale alone cannot place the model frontier
    consistently with cross-frontier ties, so the estimate is
    rationalized to nearby simple fractions and each candidate weight
    pair is handed to the staircase solver, which imposes the global
    indifference ladder under those weights and is gated by exact
    replay.
    """
    if labeling.essential_nw == (True, True):
        raise FitError(
            "classification",
            "the north-west working region shows two essential axes; no boundary weight fits",
        )
    survives = labeling.essential_nw[nw_axis - 1]
    other = labeling.essential_nw[2 - nw_axis]
    if other and not survives:
        raise FitError(
            "classification",
            f"north-west evidence contradicts axis {nw_axis} surviving there",
        )
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    mask_se, mask_nw = _safe_masks(labeling, ord1, ord2)
    safe_theta = mask_se & mask_nw
    fit_mask = mask_se
    if fit_mask.any(axis=1).sum() < 2 or fit_mask.any(axis=0).sum() < 2:
        fit_mask = labeling.in_se & ~labeling.se_ext & ~labeling.nw_ext
    if fit_mask.any(axis=1).sum() < 2 or fit_mask.any(axis=0).sum() < 2:
        raise FitError("cone", "south-east region too thin to scale")
    cone = fit_cone_additive(rel, fit_mask, delta)
    v1se, v2se = cone.v1, cone.v2
    pair = _reference_pair(safe_theta, ord1, ord2)
    if pair is None:
        pair = _reference_pair(labeling.theta_work, ord1, ord2)
    if pair is None:
        raise FitError("alignment", "no frontier reference pair for normalization")
    r0, r1 = pair
    for lbl, scale_map in ((r0[0], v1se), (r1[0], v1se), (r0[1], v2se), (r1[1], v2se)):
        if lbl not in scale_map:
            raise FitError(
                "alignment",
                "reference labels missing from the south-east scale",
                witness={"r0": r0, "r1": r1},
            )
    unit = v1se[r1[0]] - v1se[r0[0]]
    if unit <= tol:
        raise FitError("alignment", "reference pair does not increase on axis 1", witness={"r0": r0, "r1": r1})
    k_est = (v2se[r1[1]] - v2se[r0[1]]) / unit
    if k_est <= tol:
        raise FitError("alignment", "reference pair does not increase on axis 2", witness={"r0": r0, "r1": r1})
    nu1_est = 1.0 / (1.0 + k_est)
    cands: list[Fraction] = []
    for den in (4, 6, 8, 12, 24, 48):
        c = Fraction(nu1_est).limit_denominator(den)
        if 0 < c < 1 and c not in cands:
            cands.append(c)
    cands.sort(key=lambda c: abs(float(c) - nu1_est))
    nu2 = Fraction(0) if nw_axis == 1 else Fraction(1)
    ctx = _weights_context(rel, labeling)
    for nu1 in cands:
        rep, _ = _try_weights(
            rel, labeling, ctx, nu1, nu2, delta, tol, 192, f"mixed-nw{nw_axis}"
        )
        if rep is not None:
            return rep
    raise FitError(
        "representation",
        "no rationalized weight near the scale estimate replays",
        witness={"k": k_est, "candidates": [str(c) for c in cands]},
    )


def fit_one_essential(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    delta: Fraction = Fraction(1),
    tol: float = 1e-7,
) -> Representation:
    """Constructions for profiles where a region has one essential axis.

    Dispatches on the working-region essentiality flags: both regions
    single-essential takes the class-ladder min/max construction, a
    single-essential north-west side grafts onto an additively fitted
    south-east region, and the mirrored profile runs that same graft
    on the axis-swapped relation.  Each candidate is replay-gated
    here, so an ambiguous profile (tiny working regions) simply tries
    the plausible constructions in order.
    """
    e1se, e2se = labeling.essential_se
    e1nw, e2nw = labeling.essential_nw
    runs: list[tuple[str, callable]] = []

    def ladder(kind: str):
        return lambda: _fit_ladder(rel, labeling, kind)

    def mixed(axis: int):
        return lambda: _fit_mixed(rel, labeling, axis, delta, tol)

    def mixed_transposed(axis: int):
        def run():
            rel_t = transpose_relation(rel)
            lab_t = classify_regions(rel_t)
            if not lab_t.ok:
                raise FitError("classification", f"transposed relation: {lab_t.reason}")
            rep_t = _fit_mixed(rel_t, lab_t, axis, delta, tol)
            cap = Capacity.two(float(rep_t.capacity.nu2), float(rep_t.capacity.nu1))
            return Representation(
                rel.space,
                rep_t.f2,
                rep_t.f1,
                cap,
                None,
                None,
                labeling,
                f"mixed-se{3 - axis}",
            )

        return run

    if (e1se and not e2se) and (not e1nw and e2nw):
        runs.append(("ladder-max", ladder("max")))
    if (not e1se and e2se) and (e1nw and not e2nw):
        runs.append(("ladder-min", ladder("min")))
    if e1nw and not e2nw:
        runs.append(("mixed-nw1", mixed(1)))
    if e2nw and not e1nw:
        runs.append(("mixed-nw2", mixed(2)))
    if e2se and not e1se:
        runs.append(("mixed-se2", mixed_transposed(1)))
    if e1se and not e2se:
        runs.append(("mixed-se1", mixed_transposed(2)))
    for name, run in (("ladder-min", ladder("min")), ("ladder-max", ladder("max")),
                      ("mixed-nw1", mixed(1)), ("mixed-nw2", mixed(2)),
                      ("mixed-se2", mixed_transposed(1)), ("mixed-se1", mixed_transposed(2))):
        if all(name != seen for seen, _ in runs):
            runs.append((name, run))

    failures = []
    for name, run in runs:
        try:
            rep = run()
        except FitError as err:
            failures.append(f"{name} ({err.stage}): {err}")
            continue
        report = agreement(rel, rep, tol)
        if report.fraction == 1.0:
            return rep
        failures.append(f"{name} (representation): mismatch at {report.first_mismatch}")
    _check_theta_pinning(rel, labeling)
    raise FitError(
        "representation",
        "no single-essential construction reproduces the relation",
        witness=failures,
    )


# ---------------------------------------------------------------------------
# fixed-weight rescue fits
# ---------------------------------------------------------------------------

_CANDIDATE_NUS: tuple[tuple[Fraction, Fraction], ...] = tuple(
    (Fraction(a), Fraction(b))
    for a, b in [
        ("1/2", "1/4"), ("1/4", "1/2"), ("1/3", "1/2"), ("1/2", "1/3"),
        ("2/3", "1/5"), ("1/5", "2/3"), ("1/3", "1/4"), ("1/4", "1/3"),
        ("3/4", "2/3"), ("2/3", "3/4"), ("2/5", "1/5"), ("1/5", "2/5"),
        ("3/4", "1/2"), ("1/2", "3/4"), ("1/3", "1/5"), ("1/5", "1/3"),
        ("1/2", "0"), ("1/3", "0"), ("2/3", "0"), ("3/4", "0"), ("1/4", "0"),
        ("0", "1/2"), ("0", "1/3"), ("0", "2/3"), ("0", "3/4"), ("0", "1/4"),
        ("1/2", "1"), ("1/3", "1"), ("2/3", "1"),
        ("1", "1/2"), ("1", "1/3"), ("1", "2/3"),
    ]
)


def _rank_groups(order: CoordinateOrder) -> list[list[int]]:
    """Levels grouped by rank, worst group first."""
    groups: dict[int, list[int]] = {}
    for lvl, r in enumerate(order.ranks()):
        groups.setdefault(int(r), []).append(lvl)
    return [groups[r] for r in sorted(groups)]


def _staircase_bounds(
    labeling: RegionLabeling,
    groups1: list[list[int]],
    groups2: list[list[int]],
) -> tuple[list[int], list[int]] | None:
    """Threshold corridor each row group must respect.

    The true split of the grid is a staircase in rank space: row group
    g keeps its first t_g column groups on the south-east side, with
    t nondecreasing in g.  Labels only ever over-paint, so a point
    missing the north-west label is certainly south-east and pushes
    t_g up, and a point missing the south-east label caps it.  Returns
    (lower, upper) per row group, or None when some row has none of
    the labels arranged consistently.
    """
    g2 = len(groups2)
    lo = [0] * len(groups1)
    hi = [g2] * len(groups1)
    for gi, rows in enumerate(groups1):
        for hj, cols in enumerate(groups2):
            must_se = any(not labeling.in_nw[i, j] for i in rows for j in cols)
            must_nw = any(not labeling.in_se[i, j] for i in rows for j in cols)
            if must_se and must_nw:
                return None
            if must_se:
                lo[gi] = max(lo[gi], hj + 1)
            if must_nw:
                hi[gi] = min(hi[gi], hj)
        if lo[gi] > hi[gi]:
            return None
    return lo, hi


def _corridor_staircases(lo: list[int], hi: list[int], limit: int) -> list[tuple[int, ...]]:
    """Nondecreasing threshold tuples inside the corridor, centre first.

    Each level is explored centre-out from the corridor midpoint, so
    when the corridor is too wide to enumerate fully the collected
    prefix is biased toward balanced staircases; the true split sits
    mid-corridor whenever the labels over-paint both ways comparably.
    """
    n = len(lo)
    min_hi_suffix = [0] * n
    running = None
    for idx in range(n - 1, -1, -1):
        running = hi[idx] if running is None else min(running, hi[idx])
        min_hi_suffix[idx] = running
    seed = [(lo[i] + hi[i] + 1) // 2 for i in range(n)]
    out: list[tuple[int, ...]] = []

    def rec(idx: int, floor: int, prefix: tuple[int, ...]) -> None:
        if len(out) >= limit:
            return
        if idx == n:
            out.append(prefix)
            return
        start = max(lo[idx], floor)
        stop = min(hi[idx], min_hi_suffix[idx])
        if start > stop:
            return
        mid = min(max(seed[idx], start), stop)
        order = [mid]
        for d in range(1, stop - start + 1):
            if mid - d >= start:
                order.append(mid - d)
            if mid + d <= stop:
                order.append(mid + d)
        for t in order:
            rec(idx + 1, t, prefix + (t,))

    rec(0, 0, ())
    return out


def _order_ladder(rel: PreferenceRelation) -> list[list[int]]:
    """Global indifference classes as point lists, worst first.

    Raises when the beats-count ranking is not a weak order; the
    rescue fit only makes sense on orderly data.
    """
    beats = [(int((rel.cmp[a] > 0).sum()), a) for a in range(rel.space.size)]
    beats.sort()
    classes: list[list[int]] = []
    last = None
    for score, a in beats:
        if score != last:
            classes.append([])
            last = score
        classes[-1].append(a)
    for group in classes:
        for a in group[1:]:
            if rel.cmp[group[0], a] != 0:
                raise FitError("representation", "data is not a weak order; rescue fit skipped")
    for low, high in zip(classes, classes[1:]):
        if rel.cmp[high[0], low[0]] <= 0:
            raise FitError("representation", "data is not a weak order; rescue fit skipped")
    return classes


def _staircase_system(
    rel: PreferenceRelation,
    classes: list[list[int]],
    groups1: list[list[int]],
    groups2: list[list[int]],
    thresholds: tuple[int, ...],
    nu1: Fraction,
    nu2: Fraction,
    delta: Fraction,
) -> FeasibilitySystem:
    """Order system for fixed weights and a fixed staircase split.

    A point on the south-east side of the staircase takes the value
    nu1*f1 + (1-nu1)*f2 and the rest take (1-nu2)*f1 + nu2*f2; rows at
    the staircase boundary carry f1 >= f2 (south-east side) and
    f2 >= f1 (north-west side) so the chosen expression really is the
    governing one, and rank ties and rank order are carried by
    equality and weak rows on f1 and f2 themselves.
    """
    m1, m2 = rel.m1, rel.m2
    n_vars = m1 + m2
    zero = Fraction(0)
    row_group = np.empty(m1, dtype=int)
    for gi, rows in enumerate(groups1):
        for i in rows:
            row_group[i] = gi
    col_group = np.empty(m2, dtype=int)
    for hj, cols in enumerate(groups2):
        for j in cols:
            col_group[j] = hj
    c_se = (nu1, 1 - nu1)
    c_nw = (1 - nu2, nu2)

    def coeffs(a: int) -> list[Fraction]:
        i, j = divmod(a, m2)
        se_side = col_group[j] < thresholds[row_group[i]]
        w1, w2 = c_se if se_side else c_nw
        row = [zero] * n_vars
        row[i] += w1
        row[m1 + j] += w2
        return row

    rows_out: list[Row] = []
    for groups, off in ((groups1, 0), (groups2, m1)):
        for grp in groups:
            for a, b in zip(grp, grp[1:]):
                r = [zero] * n_vars
                r[off + a] += 1
                r[off + b] -= 1
                rows_out.append(Row(tuple(r), zero, equality=True))
        for ga, gb in zip(groups, groups[1:]):
            r = [zero] * n_vars
            r[off + gb[0]] += 1
            r[off + ga[0]] -= 1
            rows_out.append(Row(tuple(r), zero, equality=False))
    for group in classes:
        for a, b in zip(group, group[1:]):
            diff = [x - y for x, y in zip(coeffs(a), coeffs(b))]
            rows_out.append(Row(tuple(diff), zero, equality=True))
    for low, high in zip(classes, classes[1:]):
        diff = [x - y for x, y in zip(coeffs(high[0]), coeffs(low[0]))]
        rows_out.append(Row(tuple(diff), delta, equality=False))
    for gi, rows_g in enumerate(groups1):
        t = thresholds[gi]
        i0 = rows_g[0]
        if t > 0:
            r = [zero] * n_vars
            r[i0] += 1
            r[m1 + groups2[t - 1][0]] -= 1
            rows_out.append(Row(tuple(r), zero, equality=False))
        if t < len(groups2):
            r = [zero] * n_vars
            r[m1 + groups2[t][0]] += 1
            r[i0] -= 1
            rows_out.append(Row(tuple(r), zero, equality=False))
    return FeasibilitySystem(n_vars, tuple(rows_out))


@dataclass(frozen=True)
class _WeightsContext:
    """Shared pieces of every fixed-weight staircase solve.

    Attributes:
        groups1: Axis-1 rank groups, worst first.
        groups2: Axis-2 rank groups, worst first.
        classes: Global indifference classes, worst first.
        lo: Per-row-group lower staircase bounds from the labels.
        hi: Per-row-group upper staircase bounds from the labels.
    """

    groups1: list[list[int]]
    groups2: list[list[int]]
    classes: list[list[int]]
    lo: list[int]
    hi: list[int]


def _weights_context(rel: PreferenceRelation, labeling: RegionLabeling) -> _WeightsContext:
    """Rank groups, class ladder and corridor bounds for fixed-weight fits."""
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    groups1 = _rank_groups(ord1)
    groups2 = _rank_groups(ord2)
    bounds = _staircase_bounds(labeling, groups1, groups2)
    if bounds is None:
        raise FitError("representation", "labels admit no monotone region split")
    lo, hi = bounds
    classes = _order_ladder(rel)
    return _WeightsContext(groups1, groups2, classes, lo, hi)


def _try_weights(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    ctx: _WeightsContext,
    nu1: Fraction,
    nu2: Fraction,
    delta: Fraction,
    tol: float,
    limit: int,
    branch: str,
) -> tuple[Representation | None, int]:
    """Solve one staircase program per corridor split at fixed weights.

    Returns the first representation whose replay is exact together
    with the number of solves spent, or ``(None, solves)`` when no
    split within ``limit`` replays.
    """
    v1, v2 = float(nu1), float(nu2)
    k = (1.0 - v1) / v1 if 0 < v1 < 1 else None
    if k is not None and 0 < v2 < 1:
        lam: float | None = v2 / (k * (1.0 - v2))
    elif v2 == 0:
        lam = 0.0
    else:
        lam = None
    solves = 0
    for thresholds in _corridor_staircases(ctx.lo, ctx.hi, limit):
        solves += 1
        system = _staircase_system(
            rel, ctx.classes, ctx.groups1, ctx.groups2, thresholds, nu1, nu2, delta
        )
        res = solve_main(system)
        if not res.feasible:
            continue
        pt = res.point
        f1 = tuple(float(pt[i]) for i in range(rel.m1))
        f2 = tuple(float(pt[rel.m1 + j]) for j in range(rel.m2))
        rep = Representation(
            rel.space, f1, f2, Capacity.two(v1, v2), k, lam, labeling, branch
        )
        if agreement(rel, rep, tol).fraction == 1.0:
            return rep, solves
    return None, solves


def _ordered_candidates(labeling: RegionLabeling) -> list[tuple[Fraction, Fraction]]:
    """Candidate weights reordered by the essentiality profile.

    When a working region already looks one-essential, the matching
    boundary family is promoted to the head of the list so the budget
    is not burnt on interior weights that cannot replay.
    """
    head: list[tuple[Fraction, Fraction]] = []
    if labeling.essential_nw == (True, False):
        head += [c for c in _CANDIDATE_NUS if c[1] == 0]
    elif labeling.essential_nw == (False, True):
        head += [c for c in _CANDIDATE_NUS if c[1] == 1]
    if labeling.essential_se == (False, True):
        head += [c for c in _CANDIDATE_NUS if c[0] == 0]
    elif labeling.essential_se == (True, False):
        head += [c for c in _CANDIDATE_NUS if c[0] == 1]
    seen = set(head)
    return head + [c for c in _CANDIDATE_NUS if c not in seen]


def _fit_assumed(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    delta: Fraction,
    tol: float,
    budget: int = 2048,
    per_candidate: int = 192,
) -> Representation:
    """Try fixed weights over the staircases the labels allow.

    Candidate weights are walked with the essentiality profile's
    preferred families first; for each pair the corridor staircases
    are enumerated centre-out and one feasibility program is solved
    per staircase.  The first representation whose replay is exact
    wins.  ``budget`` caps the total number of solves so a wide
    corridor cannot stall the fit.
    """
    ctx = _weights_context(rel, labeling)
    solves = 0
    for nu1, nu2 in _ordered_candidates(labeling):
        if nu1 + nu2 == 1:
            continue
        if solves >= budget:
            raise FitError("representation", "rescue fit budget exhausted")
        limit = min(per_candidate, budget - solves)
        rep, spent = _try_weights(
            rel, labeling, ctx, nu1, nu2, delta, tol, limit, "assumed-weights"
        )
        solves += spent
        if rep is not None:
            return rep
    raise FitError("representation", "no fixed-weight staircase replays")


# ---------------------------------------------------------------------------
# the orchestrator
# ---------------------------------------------------------------------------


def _safe_masks(
    labeling: RegionLabeling, ord1: CoordinateOrder, ord2: CoordinateOrder
) -> tuple[np.ndarray, np.ndarray]:
    """Region masks guaranteed pure, grown from the working cores.

    A cone of a region's own kind anchored at a certainly-in-region
    point stays inside the (closed) region: moving up the region's own
    axis and down the other one can only deepen membership.  Unions of
    such cones are therefore additively representable whenever the
    data has a Choquet model at all, no matter how far the raw labels
    over-paint, and their overlap can only consist of true frontier
    points.
    """
    mask_se = np.zeros_like(labeling.in_se)
    for z in np.argwhere(labeling.se_work):
        mask_se |= cone_mask(ord1, ord2, (int(z[0]), int(z[1])), "se")
    mask_nw = np.zeros_like(labeling.in_nw)
    for z in np.argwhere(labeling.nw_work):
        mask_nw |= cone_mask(ord1, ord2, (int(z[0]), int(z[1])), "nw")
    return mask_se, mask_nw


def _fit_two_essential(
    rel: PreferenceRelation,
    labeling: RegionLabeling,
    delta: Fraction,
    tol: float,
    mode: str,
) -> Representation:
    """Cones, join, align, extract: the fully two-essential pipeline.

    The "full" masks fit everything painted into a region except the
    extreme frontier points.  The "core" variant restricts to
    exclusively-labelled points plus the non-extreme frontier.  The
    "safe" variant grows each mask from the working core's own cones
    and takes reference points from the masks' overlap, which is
    immune to over-painted labels entirely but needs rich cores to
    cover enough of the grid.
    """
    ord1 = coordinate_order(rel, 1)
    ord2 = coordinate_order(rel, 2)
    not_ext = ~labeling.se_ext & ~labeling.nw_ext
    ref_mask: np.ndarray | None = None
    if mode == "safe":
        mask_se, mask_nw = _safe_masks(labeling, ord1, ord2)
        if not mask_se.any() or not mask_nw.any():
            raise FitError("cone", "a working core is empty; no safe cones to grow")
        ref_mask = mask_se & mask_nw
        se_cones = [fit_cone_additive(rel, mask_se, delta)]
        nw_cones = [fit_cone_additive(rel, mask_nw, delta)]
        vse = join_cones(rel, se_cones, "se", delta, tol)
        vnw = join_cones(rel, nw_cones, "nw", delta, tol)
    else:
        if mode == "core":
            mask_se = (labeling.se_work | labeling.theta_work) & not_ext
            mask_nw = (labeling.nw_work | labeling.theta_work) & not_ext
        else:
            mask_se = labeling.in_se & not_ext
            mask_nw = labeling.in_nw & not_ext
        se_specs = _maximal_cones(labeling, ord1, ord2, "se", mask_se)
        nw_specs = _maximal_cones(labeling, ord1, ord2, "nw", mask_nw)
        if not se_specs or not nw_specs:
            raise FitError("cone", "a region has no usable cones")
        se_cones = [fit_cone_additive(rel, m, delta, anchor=z) for z, m in se_specs]
        nw_cones = [fit_cone_additive(rel, m, delta, anchor=z) for z, m in nw_specs]
        vse = join_cones(rel, se_cones, "se", delta, tol, target=mask_se)
        vnw = join_cones(rel, nw_cones, "nw", delta, tol, target=mask_nw)
    f1, f2, k, lam = align_regions(rel, labeling, vse, vnw, tol, ref_mask=ref_mask)
    cap = extract_capacity(k, lam, (True, True), (True, True))
    f1, f2 = extend_extremes(rel, labeling, f1, f2, cap, tol)
    missing = [("row", i) for i in range(rel.m1) if i not in f1]
    missing += [("col", j) for j in range(rel.m2) if j not in f2]
    if missing:
        raise FitError("extension", "labels left unvalued after extension", witness=missing)
    return Representation(
        rel.space,
        tuple(f1[i] for i in range(rel.m1)),
        tuple(f2[j] for j in range(rel.m2)),
        cap,
        k,
        lam,
        labeling,
        f"two-essential-{mode}",
    )


def _fit_additive(rel: PreferenceRelation, labeling: RegionLabeling, delta: Fraction) -> Representation:
    """One additive scale over the whole grid, symmetric weights."""
    full = np.ones((rel.m1, rel.m2), dtype=bool)
    system, (rows_used, cols_used) = order_system(rel, full, delta)
    res = solve_main(system)
    if not res.feasible:
        raise FitError("join", "the relation has no global additive scale")
    pt = res.point
    f1 = tuple(float(pt[p]) for p, _ in enumerate(rows_used))
    f2 = tuple(float(pt[len(rows_used) + p]) for p, _ in enumerate(cols_used))
    cap = Capacity.two(0.5, 0.5)
    return Representation(rel.space, f1, f2, cap, 1.0, 1.0, labeling, "additive")


def fit(
    rel: PreferenceRelation,
    delta: Fraction = Fraction(1),
    tol: float = 1e-7,
) -> Representation:
    """Fit value functions and a capacity reproducing the relation.

    Classifies the regions, orders the plausible constructions by the
    essentiality profile, and returns the first whose replay is exact
    on every ordered pair.  Raises a staged :class:`FitError` when
    classification fails or every construction misses; the error for
    the exhausted case lists each branch's failure.
    """
    labeling = classify_regions(rel)
    if not labeling.ok:
        raise FitError(
            "classification",
            labeling.reason,
            witness=labeling.unlabelled[:4] if labeling.orders_complete else None,
        )
    e_se = labeling.essential_se
    e_nw = labeling.essential_nw

    branches: list[tuple[str, callable]] = []

    def add(name: str, run) -> None:
        if all(name != seen for seen, _ in branches):
            branches.append((name, run))

    two = lambda mode: (lambda: _fit_two_essential(rel, labeling, delta, tol, mode))
    one = lambda: fit_one_essential(rel, labeling, delta, tol)
    additive = lambda: _fit_additive(rel, labeling, delta)

    se_two = e_se == (True, True)
    nw_two = e_nw == (True, True)
    se_one = e_se[0] != e_se[1]
    nw_one = e_nw[0] != e_nw[1]
    if se_two and nw_two:
        add("two-essential-safe", two("safe"))
        add("two-essential-full", two("full"))
        add("two-essential-core", two("core"))
        add("additive", additive)
    elif se_one or nw_one:
        add("one-essential", one)
        add("additive", additive)
    add("additive", additive)
    add("two-essential-safe", two("safe"))
    add("two-essential-full", two("full"))
    add("two-essential-core", two("core"))
    add("one-essential", one)

    failures: list[str] = []
    for name, run in branches:
        try:
            rep = run()
        except FitError as err:
            failures.append(f"{name} ({err.stage}): {err}")
            continue
        report = agreement(rel, rep, tol)
        if report.fraction == 1.0:
            return rep
        failures.append(f"{name} (representation): mismatch at {report.first_mismatch}")

    try:
        return _fit_assumed(rel, labeling, delta, tol)
    except FitError as err:
        failures.append(f"assumed-weights ({err.stage}): {err}")

    _check_theta_pinning(rel, labeling)
    raise FitError(
        "representation",
        "no construction reproduces the relation; attempts: " + " | ".join(failures),
        witness=failures,
    )


def uniqueness_case(cap: Capacity, tol: float = 1e-9) -> int:
    """Uniqueness regime of a fitted capacity, cases 1 through 5.

    1: weights sum to one (single global additive scale).
    2: both weights interior, sum away from one.
    3: first weight at a bound, second interior.
    4: second weight at a bound, first interior.
    5: both weights at bounds (pure min or pure max).
    """
    nu1 = float(cap.nu1)
    nu2 = float(cap.nu2)

    def at_bound(v: float) -> bool:
        return v <= tol or v >= 1.0 - tol

    if abs(nu1 + nu2 - 1.0) <= tol:
        return 1
    if not at_bound(nu1) and not at_bound(nu2):
        return 2
    if at_bound(nu1) and at_bound(nu2):
        return 5
    if at_bound(nu1):
        return 3
    return 4
