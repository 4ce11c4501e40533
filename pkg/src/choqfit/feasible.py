"""Linear feasibility systems for additive value fitting.

A subset of alternatives is additively representable exactly when the
system {v(x) >= v(y) + delta for x > y, v(x) = v(y) for x ~ y} with
v(x) = v1(x1) + v2(x2) has a solution.  This module owns the system
representation, the builder that derives a system from a relation
restricted to a member mask, and the floating-point solver backend.
An exact rational route lives in :mod:`choqfit.fourier_motzkin`; the
two share the data types below and nothing else, so they can vouch
for each other.

Systems are built in reduced form: ties are chained inside each
indifference class and a single strict constraint separates
consecutive classes.  Every comparison between members follows from
those rows by transitivity (with a gap of at least delta), so the
reduced system has the same solutions as the all-pairs one while
staying small enough for exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from choqfit.relation import PreferenceRelation

__all__ = [
    "Row",
    "FeasibilitySystem",
    "FeasibilityResult",
    "order_system",
    "solve_main",
]


@dataclass(frozen=True)
class Row:
    """One linear constraint, coeffs . x >= rhs or coeffs . x = rhs.

    Attributes
    ----------
    coeffs:
        Dense coefficient tuple, one entry per system variable.
    rhs:
        Right-hand side.
    equality:
        True for an equation, False for a >= inequality.
    """

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    equality: bool

    def evaluate(self, point) -> Fraction:
        return sum((c * p for c, p in zip(self.coeffs, point)), Fraction(0))

    def satisfied_by(self, point) -> bool:
        value = self.evaluate(point)
        return value == self.rhs if self.equality else value >= self.rhs


@dataclass(frozen=True)
class FeasibilitySystem:
    """A conjunction of linear rows over ``n_vars`` unknowns.

    Attributes
    ----------
    n_vars:
        Number of variables; every row's coefficient tuple has this
        length.
    rows:
        The constraints.
    """

    n_vars: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row.coeffs) != self.n_vars:
                raise ValueError("row width does not match n_vars")

    def subset(self, indices) -> "FeasibilitySystem":
        """The subsystem made of the given row indices."""
        return FeasibilitySystem(
            self.n_vars, tuple(self.rows[i] for i in indices)
        )

    def holds_at(self, point, slack: Fraction | float = 0) -> bool:
        """Whether a point satisfies every row, up to additive slack."""
        for row in self.rows:
            value = row.evaluate(point)
            if row.equality:
                if abs(value - row.rhs) > slack:
                    return False
            elif value < row.rhs - slack:
                return False
        return True


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of a feasibility solve.

    Attributes
    ----------
    feasible:
        Whether a solution exists.
    point:
        A solution when feasible: Fractions from the exact route,
        floats from the main backend.  None when infeasible.
    certificate:
        When the route can name them, indices of rows that are jointly
        unsatisfiable; None when the backend does not expose a witness
        (the whole system is then the certificate).
    backend:
        Which route produced this result.
    """

    feasible: bool
    point: tuple | None
    certificate: tuple[int, ...] | None
    backend: str


def order_system(
    rel: PreferenceRelation,
    members: np.ndarray,
    delta: Fraction = Fraction(1),
) -> tuple[FeasibilitySystem, tuple[tuple[int, ...], tuple[int, ...]]]:
    """Additive-representability system for the members of a mask.

    Unknowns are one value per first-axis level and one per second-axis
    level actually present in the mask, in that order.  Returns the
    system together with ``(rows_used, cols_used)`` mapping variable
    positions back to grid levels.

    Strict preferences between consecutive indifference classes get a
    margin of ``delta``; delta only sets the solution's scale, so any
    positive value asks the same question.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    members = np.asarray(members, dtype=bool)
    if members.shape != (rel.m1, rel.m2):
        raise ValueError("mask shape does not match the grid")
    rows_used = tuple(int(i) for i in np.flatnonzero(members.any(axis=1)))
    cols_used = tuple(int(j) for j in np.flatnonzero(members.any(axis=0)))
    var_of_row = {i: p for p, i in enumerate(rows_used)}
    var_of_col = {j: len(rows_used) + p for p, j in enumerate(cols_used)}
    n_vars = len(rows_used) + len(cols_used)

    pts = [(int(i), int(j)) for i, j in np.argwhere(members)]
    flat = [i * rel.m2 + j for i, j in pts]
    # Rank by how many members each point beats; ties share a rank.
    beats = [(int((rel.cmp[a][flat] > 0).sum()), a) for a in flat]
    beats.sort()
    classes: list[list[int]] = []
    last = None
    for score, a in beats:
        if score != last:
            classes.append([])
            last = score
        classes[-1].append(a)

    zero = Fraction(0)

    def difference(a: int, b: int) -> tuple[Fraction, ...]:
        c = [zero] * n_vars
        c[var_of_row[a // rel.m2]] += 1
        c[var_of_col[a % rel.m2]] += 1
        c[var_of_row[b // rel.m2]] -= 1
        c[var_of_col[b % rel.m2]] -= 1
        return tuple(c)

    # The chained encoding below is only faithful when the restriction
    # is a weak order.  When ranking by wins misfiles a pair (the data
    # is intransitive), fall back to one row per compared pair so the
    # inconsistency surfaces as infeasibility instead of being papered
    # over by a bogus tie chain.
    orderly = all(
        rel.cmp[a, b] == 0 for cls in classes for a in cls for b in cls if a < b
    ) and all(
        rel.cmp[high[0], low[0]] > 0
        for low, high in zip(classes, classes[1:])
    )

    built: list[Row] = []
    if orderly:
        for cls in classes:
            for a, b in zip(cls, cls[1:]):
                built.append(Row(difference(a, b), zero, True))
        for low, high in zip(classes, classes[1:]):
            built.append(Row(difference(high[0], low[0]), Fraction(delta), False))
    else:
        for a in flat:
            for b in flat:
                if a < b and rel.cmp[a, b] == 0:
                    built.append(Row(difference(a, b), zero, True))
                elif rel.cmp[a, b] > 0:
                    built.append(Row(difference(a, b), Fraction(delta), False))
    return FeasibilitySystem(n_vars, tuple(built)), (rows_used, cols_used)


def solve_main(system: FeasibilitySystem) -> FeasibilityResult:
    """Feasibility via linear programming (HiGHS, floating point).

    Solves with a zero objective and free variables; any returned
    point is a solution.  Infeasibility carries no row-level witness
    on this route.
    """
    if not system.rows:
        return FeasibilityResult(True, (0.0,) * system.n_vars, None, "lp")
    if system.n_vars == 0:
        bad = any(
            (row.rhs != 0) if row.equality else (row.rhs > 0)
            for row in system.rows
        )
        return FeasibilityResult(not bad, () if not bad else None, None, "lp")
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row in system.rows:
        coeffs = [float(c) for c in row.coeffs]
        if row.equality:
            a_eq.append(coeffs)
            b_eq.append(float(row.rhs))
        else:
            # linprog wants A x <= b.
            a_ub.append([-c for c in coeffs])
            b_ub.append(-float(row.rhs))
    res = linprog(
        c=np.zeros(system.n_vars),
        A_ub=np.array(a_ub) if a_ub else None,
        b_ub=np.array(b_ub) if b_ub else None,
        A_eq=np.array(a_eq) if a_eq else None,
        b_eq=np.array(b_eq) if b_eq else None,
        bounds=[(None, None)] * system.n_vars,
        method="highs",
    )
    if res.status == 0:
        return FeasibilityResult(True, tuple(float(v) for v in res.x), None, "lp")
    if res.status == 2:
        return FeasibilityResult(False, None, None, "lp")
    raise RuntimeError(f"feasibility solve failed: {res.message}")
