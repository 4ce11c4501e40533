"""Exact feasibility by Fourier-Motzkin elimination.

An independent route to the same question :func:`choqfit.feasible.solve_main`
answers with floating-point linear programming.  Everything here runs
on Fractions: a feasible answer comes with an exact solution point,
and an infeasible one names an irreducible set of rows whose
conjunction is already unsatisfiable.  The two routes share only the
system data types, so their agreement is evidence, not tautology.

Elimination squares the row count in the worst case, which caps this
route at small systems; the reduced systems built for cones on grids
of fitting size stay far below the cap in practice.
"""

from __future__ import annotations

from fractions import Fraction

from choqfit.feasible import FeasibilityResult, FeasibilitySystem

__all__ = ["solve_exact"]

_ZERO = Fraction(0)

# (coeffs, rhs, support): coeffs . x >= rhs, derived from the original
# rows listed in support.
_Ineq = tuple[list[Fraction], Fraction, frozenset[int]]


def _normalized(coeffs: list[Fraction], rhs: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    for c in coeffs:
        if c != 0:
            scale = abs(c)
            return tuple(x / scale for x in coeffs), rhs / scale
    return tuple(coeffs), rhs


def _clean(
    ineqs: list[_Ineq],
) -> tuple[list[_Ineq], frozenset[int] | None]:
    """Drop trivial and dominated rows; report a constant contradiction."""
    best: dict[tuple[Fraction, ...], _Ineq] = {}
    for coeffs, rhs, support in ineqs:
        if all(c == 0 for c in coeffs):
            if rhs > 0:
                return [], support
            continue
        key, scaled_rhs = _normalized(coeffs, rhs)
        kept = best.get(key)
        if kept is None or scaled_rhs > _normalized(kept[0], kept[1])[1]:
            best[key] = (coeffs, rhs, support)
    return list(best.values()), None


def _pick_variable(ineqs: list[_Ineq], n_vars: int) -> int | None:
    """The present variable whose elimination spawns fewest rows."""
    choice, cost = None, None
    for k in range(n_vars):
        lows = sum(1 for c, _, _ in ineqs if c[k] > 0)
        ups = sum(1 for c, _, _ in ineqs if c[k] < 0)
        if lows + ups == 0:
            continue
        k_cost = lows * ups
        if cost is None or k_cost < cost:
            choice, cost = k, k_cost
    return choice


def solve_exact(
    system: FeasibilitySystem, minimize_certificate: bool = True
) -> FeasibilityResult:
    """Decide the system exactly, with a rational point or a witness.

    When infeasible, the certificate lists row indices whose
    subsystem is itself infeasible; with ``minimize_certificate`` the
    list is shrunk until removing any single row restores feasibility.
    """
    ineqs: list[_Ineq] = []
    eqs: list[tuple[list[Fraction], Fraction, frozenset[int]]] = []
    for idx, row in enumerate(system.rows):
        record = (list(row.coeffs), row.rhs, frozenset({idx}))
        (eqs if row.equality else ineqs).append(record)

    # Equalities first: each one solves a pivot variable away, in both
    # the remaining equalities and all inequalities.
    substitutions: list[tuple[int, list[Fraction], Fraction]] = []
    while eqs:
        coeffs, rhs, support = eqs.pop(0)
        pivot = next((k for k, c in enumerate(coeffs) if c != 0), None)
        if pivot is None:
            if rhs != 0:
                return _infeasible(system, support, minimize_certificate)
            continue
        substitutions.append((pivot, coeffs, rhs))

        def substitute(rec):
            rc, rr, rs = rec
            t = rc[pivot] / coeffs[pivot]
            if t == 0:
                return rec
            return (
                [a - t * b for a, b in zip(rc, coeffs)],
                rr - t * rhs,
                rs | support,
            )

        eqs = [substitute(r) for r in eqs]
        ineqs = [substitute(r) for r in ineqs]

    ineqs, contradiction = _clean(ineqs)
    if contradiction is not None:
        return _infeasible(system, contradiction, minimize_certificate)

    # Elimination proper.  The rows that mention the chosen variable
    # are kept aside: they are what pins its value on the way back.
    steps: list[tuple[int, list[_Ineq]]] = []
    while True:
        k = _pick_variable(ineqs, system.n_vars)
        if k is None:
            break
        lowers = [r for r in ineqs if r[0][k] > 0]
        uppers = [r for r in ineqs if r[0][k] < 0]
        rest = [r for r in ineqs if r[0][k] == 0]
        steps.append((k, lowers + uppers))
        combined = rest
        for lc, lr, ls in lowers:
            for uc, ur, us in uppers:
                a, b = lc[k], uc[k]
                combined.append(
                    (
                        [-b * x + a * y for x, y in zip(lc, uc)],
                        -b * lr + a * ur,
                        ls | us,
                    )
                )
        ineqs, contradiction = _clean(combined)
        if contradiction is not None:
            return _infeasible(system, contradiction, minimize_certificate)

    # Feasible: assign free variables, then walk the eliminations and
    # the equality substitutions backwards.
    point: list[Fraction | None] = [None] * system.n_vars
    for k, bounds in reversed(steps):
        lo: Fraction | None = None
        hi: Fraction | None = None
        for coeffs, rhs, _ in bounds:
            rest_val = sum(
                (c * (point[j] if point[j] is not None else _ZERO)
                 for j, c in enumerate(coeffs) if j != k and c != 0),
                _ZERO,
            )
            bound = (rhs - rest_val) / coeffs[k]
            if coeffs[k] > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            assert lo <= hi, "elimination left an empty interval"
            point[k] = (lo + hi) / 2
        else:
            point[k] = lo if lo is not None else hi
    for pivot, coeffs, rhs in reversed(substitutions):
        rest_val = sum(
            (c * (point[j] if point[j] is not None else _ZERO)
             for j, c in enumerate(coeffs) if j != pivot and c != 0),
            _ZERO,
        )
        point[pivot] = (rhs - rest_val) / coeffs[pivot]
    final = tuple(v if v is not None else _ZERO for v in point)
    return FeasibilityResult(True, final, None, "fm")


def _infeasible(
    system: FeasibilitySystem, support: frozenset[int], minimize: bool
) -> FeasibilityResult:
    indices = sorted(support)
    if minimize:
        changed = True
        while changed:
            changed = False
            for idx in list(indices):
                trial = [i for i in indices if i != idx]
                sub = solve_exact(system.subset(trial), minimize_certificate=False)
                if not sub.feasible:
                    indices = trial
                    changed = True
    return FeasibilityResult(False, None, tuple(indices), "fm")
