"""Instance generation: induced relations, curated menus, mutation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from choqfit.capacity import Capacity, Numeric, choquet
from choqfit.relation import PreferenceRelation, ProductSpace

__all__ = [
    "induce",
    "default_labels",
]


def default_labels(m: int, prefix: str) -> tuple[str, ...]:
    return tuple(f"{prefix}{k}" for k in range(m))


def induce(
    f1: Sequence[Numeric],
    f2: Sequence[Numeric],
    cap: Capacity,
    x1: Sequence[str] | None = None,
    x2: Sequence[str] | None = None,
) -> PreferenceRelation:
    """Relation ranked by the Choquet value of each level pair.

    Builds the product of the given per-axis value lists, evaluates the
    integral at every point, and compares the results.  Comparisons use
    the arithmetic of the inputs, so pass Fractions (or ints) when exact
    ties matter; float inputs are compared bitwise and near-ties will
    land on whichever side rounding puts them.
    """
    if cap.n != 2:
        raise ValueError("induced relations are built on two criteria")
    space = ProductSpace(
        tuple(x1) if x1 is not None else default_labels(len(f1), "a"),
        tuple(x2) if x2 is not None else default_labels(len(f2), "b"),
    )
    if space.m1 != len(f1) or space.m2 != len(f2):
        raise ValueError("label lists must match value list lengths")
    scores = [choquet(cap, (u, w)) for u in f1 for w in f2]
    n = space.size
    cmp = np.zeros((n, n), dtype=np.int8)
    for a in range(n):
        for b in range(a + 1, n):
            if scores[a] > scores[b]:
                cmp[a, b], cmp[b, a] = 1, -1
            elif scores[a] < scores[b]:
                cmp[a, b], cmp[b, a] = -1, 1
    return PreferenceRelation(space, cmp)
