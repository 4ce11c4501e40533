"""Capacities on a finite criterion set and the discrete Choquet integral.

A capacity is a normalized monotone set function on the criteria
{1, .., n}.  The Choquet integral aggregates a value vector against a
capacity; for n = 2 it reduces to one of two weighted sums depending on
which coordinate is larger, which is the property everything else in
this package is built around.

All arithmetic is polymorphic: feed ``fractions.Fraction`` values in and
exact Fractions come out, feed floats in and floats come out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from numbers import Real
from typing import Iterable, Mapping, Sequence, Union

Numeric = Union[int, float, Fraction]

__all__ = [
    "Capacity",
    "CapacityCheck",
    "validate_capacity",
    "choquet",
    "comonotonic",
    "all_subsets",
]


def all_subsets(n: int) -> list[frozenset[int]]:
    """Every subset of {1, .., n}, smallest first, lexicographic within size."""
    items = range(1, n + 1)
    out: list[frozenset[int]] = []
    for size in range(n + 1):
        out.extend(frozenset(c) for c in combinations(items, size))
    return out


@dataclass(frozen=True)
class Capacity:
    """Normalized monotone set function on {1, .., n}.

    Attributes
    ----------
    n:
        Number of criteria.
    values:
        Mapping from each subset of {1, .., n} (as a frozenset of ints)
        to its capacity value.  Must satisfy values[empty] = 0,
        values[{1..n}] = 1, and monotonicity under inclusion; use
        :func:`validate_capacity` to check.
    """

    n: int
    values: Mapping[frozenset[int], Numeric]

    @classmethod
    def two(cls, nu1: Numeric, nu2: Numeric) -> "Capacity":
        """The 2-criterion capacity with singleton weights nu1, nu2."""
        return cls(
            n=2,
            values={
                frozenset(): 0,
                frozenset({1}): nu1,
                frozenset({2}): nu2,
                frozenset({1, 2}): 1,
            },
        )

    def __call__(self, subset: Iterable[int]) -> Numeric:
        return self.values[frozenset(subset)]

    @property
    def nu1(self) -> Numeric:
        return self.values[frozenset({1})]

    @property
    def nu2(self) -> Numeric:
        return self.values[frozenset({2})]

    def to_dict(self) -> dict:
        """JSON-friendly form; subsets keyed by sorted comma-joined indices."""
        enc = {}
        for sub, val in self.values.items():
            key = ",".join(str(i) for i in sorted(sub))
            enc[key] = float(val)
        return {"n": self.n, "values": enc}


@dataclass(frozen=True)
class CapacityCheck:
    """Outcome of :func:`validate_capacity`.

    Attributes
    ----------
    ok:
        True when the capacity is structurally complete and satisfies
        normalization and monotonicity.
    kind:
        None when ok; otherwise one of "structure", "normalization",
        "monotonicity".  Structural problems (missing subsets, wrong n)
        are deliberately distinct from invariant violations.
    detail:
        Human-readable description naming the offending subset or pair.
    """

    ok: bool
    kind: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_capacity(cap: Capacity) -> CapacityCheck:
    """Check completeness, normalization, and monotonicity of a capacity.

    Returns a :class:`CapacityCheck`; never raises.  The first problem
    found wins, in the order structure, normalization, monotonicity.
    """
    if cap.n < 1:
        return CapacityCheck(False, "structure", f"criterion count {cap.n} < 1")
    subs = all_subsets(cap.n)
    table = cap.values
    for sub in subs:
        if sub not in table:
            missing = "{" + ",".join(map(str, sorted(sub))) + "}"
            return CapacityCheck(False, "structure", f"missing subset entry {missing}")
        if not isinstance(table[sub], Real):
            return CapacityCheck(False, "structure", f"non-numeric entry for {set(sub) or '{}'}")
    if table[frozenset()] != 0:
        return CapacityCheck(False, "normalization", f"values(empty) = {table[frozenset()]}, expected 0")
    full = frozenset(range(1, cap.n + 1))
    if table[full] != 1:
        return CapacityCheck(False, "normalization", f"values(full set) = {table[full]}, expected 1")
    # Monotonicity along covering pairs suffices: A <= A+{i} chains reach any superset.
    for sub in subs:
        for extra in range(1, cap.n + 1):
            if extra in sub:
                continue
            sup = sub | {extra}
            if table[sub] > table[sup]:
                a = "{" + ",".join(map(str, sorted(sub))) + "}"
                b = "{" + ",".join(map(str, sorted(sup))) + "}"
                return CapacityCheck(
                    False, "monotonicity", f"values({a}) = {table[sub]} > values({b}) = {table[sup]}"
                )
    return CapacityCheck(True)


def choquet(cap: Capacity, values: Sequence[Numeric]) -> Numeric:
    """Discrete Choquet integral of ``values`` against ``cap``.

    Computes sum_i (f_(i) - f_(i-1)) * cap({j : f_j >= f_(i)}) with the
    values sorted ascending and f_(0) = 0.  This single formula covers
    vectors of arbitrary sign (it agrees with the split positive/negative
    definition, which the tests cross-check) and is independent of how
    ties are broken, because tied levels contribute zero-width steps.

    Raises
    ------
    ValueError
        If the capacity fails :func:`validate_capacity` or the vector
        length does not match ``cap.n`` or contains non-finite entries.
    """
    check = validate_capacity(cap)
    if not check:
        raise ValueError(f"invalid capacity ({check.kind}): {check.detail}")
    if len(values) != cap.n:
        raise ValueError(f"value vector has length {len(values)}, capacity has n = {cap.n}")
    for v in values:
        if isinstance(v, float) and (v != v or v in (float("inf"), float("-inf"))):
            raise ValueError("value vector entries must be finite")

    order = sorted(range(cap.n), key=lambda i: values[i])
    total: Numeric = 0
    prev: Numeric = 0
    for idx in order:
        level = values[idx]
        coalition = frozenset(j + 1 for j in range(cap.n) if values[j] >= level)
        total = total + (level - prev) * cap.values[coalition]
        prev = level
    return total


def comonotonic(u: Sequence[Numeric], w: Sequence[Numeric]) -> bool:
    """True iff no index pair orders ``u`` and ``w`` oppositely.

    Two vectors are comonotonic when there are no i, j with
    u[i] > u[j] and w[i] < w[j].  Ties never create a violating pair.
    """
    if len(u) != len(w):
        raise ValueError(f"length mismatch: {len(u)} vs {len(w)}")
    n = len(u)
    for i in range(n):
        for j in range(n):
            if u[i] > u[j] and w[i] < w[j]:
                return False
    return True


if __name__ == "__main__":
    cap = Capacity.two(Fraction(1, 2), Fraction(1, 4))
    print("capacity ok:", validate_capacity(cap).ok)
    print("choquet((1/2,1/4), (1, 3)) =", choquet(cap, (Fraction(1), Fraction(3))))
    print("choquet((1/2,1/4), (3, 1)) =", choquet(cap, (Fraction(3), Fraction(1))))
