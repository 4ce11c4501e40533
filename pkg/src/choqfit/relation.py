"""Finite preference relations on a two-axis product of labelled levels.

The central object is :class:`PreferenceRelation`: a complete reflexive
binary relation over the product X1 x X2, stored as a dense signed
comparison matrix.  Everything downstream (axiom checks, region
classification, fitting) reads that matrix; this module owns the
structural validation, the JSON wire format, the per-axis induced
orders, and the merging of duplicate-acting levels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ProductSpace",
    "PreferenceRelation",
    "CoordinateOrder",
    "MergeMap",
    "coordinate_order",
    "merge_duplicates",
    "expand_values",
    "relation_from_dict",
    "relation_to_dict",
    "load_relation",
    "save_relation",
    "RelationFormatError",
]


class RelationFormatError(ValueError):
    """Raised when relation JSON is structurally unusable.

    Messages carry enough position detail (entry index, offending
    indices) to locate the problem in the input file.
    """


@dataclass(frozen=True)
class ProductSpace:
    """Labelled finite product X1 x X2.

    Attributes
    ----------
    x1:
        Labels of the first-axis levels, in their storage order.
    x2:
        Labels of the second-axis levels.
    """

    x1: tuple[str, ...]
    x2: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.x1)) != len(self.x1):
            raise RelationFormatError("duplicate label on axis 1")
        if len(set(self.x2)) != len(self.x2):
            raise RelationFormatError("duplicate label on axis 2")
        if not self.x1 or not self.x2:
            raise RelationFormatError("each axis needs at least one level")

    @property
    def m1(self) -> int:
        return len(self.x1)

    @property
    def m2(self) -> int:
        return len(self.x2)

    @property
    def size(self) -> int:
        return self.m1 * self.m2

    def idx(self, i: int, j: int) -> int:
        """Flattened index of the point (x1[i], x2[j])."""
        return i * self.m2 + j

    def pos(self, k: int) -> tuple[int, int]:
        return divmod(k, self.m2)

    def points(self) -> Iterable[tuple[int, int]]:
        for i in range(self.m1):
            for j in range(self.m2):
                yield i, j

    def label(self, i: int, j: int) -> str:
        return f"({self.x1[i]},{self.x2[j]})"


@dataclass(frozen=True)
class PreferenceRelation:
    """Complete preference data over a :class:`ProductSpace`.

    Attributes
    ----------
    space:
        The underlying labelled product.
    cmp:
        int8 matrix of shape (size, size) in flattened point order
        (index i*m2 + j).  Entry +1 means the row point is strictly
        preferred to the column point, 0 indifferent, -1 strictly worse.
        The matrix must be antisymmetric in that sense (cmp.T == -cmp)
        with a zero diagonal; transitivity is an axiom, not a structural
        requirement, so it is checked elsewhere.
    """

    space: ProductSpace
    cmp: np.ndarray

    def __post_init__(self):
        c = self.cmp
        n = self.space.size
        if c.shape != (n, n):
            raise RelationFormatError(f"comparison matrix shape {c.shape}, expected {(n, n)}")
        if c.dtype != np.int8:
            object.__setattr__(self, "cmp", c.astype(np.int8))
            c = self.cmp
        bad = np.argwhere((c < -1) | (c > 1))
        if bad.size:
            a, b = bad[0]
            raise RelationFormatError(f"comparison entry out of range at ({a},{b}): {c[a, b]}")
        if np.any(np.diag(c) != 0):
            k = int(np.argmax(np.diag(c) != 0))
            i, j = self.space.pos(k)
            raise RelationFormatError(f"point {self.space.label(i, j)} not indifferent to itself")
        if np.any(c.T != -c):
            a, b = np.argwhere(c.T != -c)[0]
            raise RelationFormatError(
                f"contradictory pair: entries ({a},{b}) and ({b},{a}) disagree"
            )
        c.setflags(write=False)

    # -- convenience views -------------------------------------------------

    @property
    def m1(self) -> int:
        return self.space.m1

    @property
    def m2(self) -> int:
        return self.space.m2

    @property
    def cmp4(self) -> np.ndarray:
        """The comparison matrix reshaped to (m1, m2, m1, m2)."""
        m1, m2 = self.m1, self.m2
        return self.cmp.reshape(m1, m2, m1, m2)

    @property
    def geq(self) -> np.ndarray:
        """Boolean matrix of the weak relation (row at least as good)."""
        return self.cmp >= 0

    def compare(self, a: tuple[int, int], b: tuple[int, int]) -> int:
        return int(self.cmp[self.space.idx(*a), self.space.idx(*b)])

    def n_classes(self) -> int:
        """Number of indifference classes, assuming the data is a weak order."""
        return len(np.unique((self.cmp >= 0).sum(axis=1)))

    def summary(self) -> str:
        m1, m2 = self.m1, self.m2
        strict = int((self.cmp > 0).sum())
        ties = int(((self.cmp == 0).sum() - self.space.size) // 2)
        return f"{m1}x{m2} relation, {strict} strict pairs, {ties} off-diagonal ties"


# ---------------------------------------------------------------------------
# induced per-axis orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoordinateOrder:
    """Order induced on one axis by comparing points that share the other.

    Attributes
    ----------
    axis:
        1 or 2.
    geq:
        Boolean m x m matrix; geq[a, b] is True when level a is weakly
        above level b at every fixed partner level.
    complete:
        True when every pair of levels is ordered at least one way.
        Weak separability of the relation is exactly what guarantees
        this; callers that see False should treat the induced order as
        unusable and report the axiom failure instead.
    """

    axis: int
    geq: np.ndarray
    complete: bool

    @property
    def strict(self) -> np.ndarray:
        return self.geq & ~self.geq.T

    @property
    def equiv(self) -> np.ndarray:
        return self.geq & self.geq.T

    def ranks(self) -> np.ndarray:
        """Levels ranked 0 = worst, ties share a rank.  Needs completeness."""
        if not self.complete:
            raise ValueError(f"axis {self.axis} order is incomplete")
        below = self.strict.sum(axis=1)
        _, ranks = np.unique(below, return_inverse=True)
        return ranks

    def maximal(self) -> np.ndarray:
        return ~self.strict.any(axis=0)

    def minimal(self) -> np.ndarray:
        return ~self.strict.any(axis=1)


def coordinate_order(rel: PreferenceRelation, axis: int) -> CoordinateOrder:
    """Induce the order on one axis from same-partner comparisons.

    Level a is weakly above level b on axis 1 when (a, p) is weakly
    preferred to (b, p) for every p.  The relation is scanned as a
    whole; no transitivity is assumed.
    """
    c4 = rel.cmp4
    if axis == 1:
        # geq[a, b] <=> all p: (a,p) >= (b,p)
        diag = c4[:, np.arange(rel.m2), :, np.arange(rel.m2)]  # (m2, m1, m1)
        geq = (diag >= 0).all(axis=0)
    elif axis == 2:
        diag = c4[np.arange(rel.m1), :, np.arange(rel.m1), :]  # (m1, m2, m2)
        geq = (diag >= 0).all(axis=0)
    else:
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    complete = bool((geq | geq.T).all())
    return CoordinateOrder(axis=axis, geq=geq, complete=complete)


# ---------------------------------------------------------------------------
# duplicate-acting levels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MergeMap:
    """Bookkeeping for collapsing duplicate-acting levels.

    Attributes
    ----------
    to_merged1, to_merged2:
        For each original level index, the index of its representative
        in the merged space.
    reps1, reps2:
        Original indices of the kept representatives, in merged order.
    """

    to_merged1: tuple[int, ...]
    to_merged2: tuple[int, ...]
    reps1: tuple[int, ...]
    reps2: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return len(self.reps1) == len(self.to_merged1) and len(self.reps2) == len(self.to_merged2)


def _duplicate_groups(rel: PreferenceRelation, axis: int) -> list[list[int]]:
    """Group levels whose rows of the relation are indistinguishable.

    Levels a, b on axis 1 are duplicate-acting when (a,p) and (b,p)
    compare identically against every point, for every p.  That is a
    pure matrix identity, so it needs no axioms to be meaningful.
    """
    c4 = rel.cmp4
    m = rel.m1 if axis == 1 else rel.m2
    groups: list[list[int]] = []
    for a in range(m):
        placed = False
        for g in groups:
            b = g[0]
            if axis == 1:
                same = np.array_equal(c4[a], c4[b])
            else:
                same = np.array_equal(c4[:, a], c4[:, b])
            if same:
                g.append(a)
                placed = True
                break
        if not placed:
            groups.append([a])
    return groups


def merge_duplicates(rel: PreferenceRelation) -> tuple[PreferenceRelation, MergeMap]:
    """Collapse duplicate-acting levels on both axes.

    The first level of each group (in storage order) is kept as the
    representative.  Returns the merged relation together with the map
    needed to re-expand fitted values later.  When nothing merges, the
    original relation object is returned unchanged.
    """
    groups1 = _duplicate_groups(rel, 1)
    groups2 = _duplicate_groups(rel, 2)
    reps1 = tuple(g[0] for g in groups1)
    reps2 = tuple(g[0] for g in groups2)
    to_merged1 = [0] * rel.m1
    for gi, g in enumerate(groups1):
        for a in g:
            to_merged1[a] = gi
    to_merged2 = [0] * rel.m2
    for gi, g in enumerate(groups2):
        for a in g:
            to_merged2[a] = gi
    mm = MergeMap(tuple(to_merged1), tuple(to_merged2), reps1, reps2)
    if mm.trivial:
        return rel, mm
    space = ProductSpace(
        tuple(rel.space.x1[a] for a in reps1),
        tuple(rel.space.x2[a] for a in reps2),
    )
    keep = [rel.space.idx(i, j) for i in reps1 for j in reps2]
    cmp = rel.cmp[np.ix_(keep, keep)].copy()
    return PreferenceRelation(space, cmp), mm


def expand_values(values: Sequence, mm: MergeMap, axis: int) -> list:
    """Spread per-representative values back over the original levels."""
    to_merged = mm.to_merged1 if axis == 1 else mm.to_merged2
    return [values[g] for g in to_merged]


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

_REL_CODES = {"P": 1, "I": 0, "D": -1}
_REL_NAMES = {1: "P", 0: "I", -1: "D"}


def relation_from_dict(doc: Mapping) -> PreferenceRelation:
    """Build a relation from its JSON document form.

    The document holds the axis labels plus one entry per unordered
    point pair: ``[i1, j1, i2, j2, rel]`` compares (x1[i1], x2[j1])
    against (x1[i2], x2[j2]), with rel one of "P" (first strictly
    preferred), "I" (indifferent), "D" (first strictly worse).  Every
    distinct pair must appear exactly once in either orientation;
    duplicates, contradictions, and gaps are all rejected with the
    offending entry index in the message.
    """
    for key in ("x1", "x2", "pairs"):
        if key not in doc:
            raise RelationFormatError(f"missing top-level key {key!r}")
    x1 = doc["x1"]
    x2 = doc["x2"]
    if not isinstance(x1, list) or not isinstance(x2, list):
        raise RelationFormatError("x1 and x2 must be lists of labels")
    space = ProductSpace(tuple(str(v) for v in x1), tuple(str(v) for v in x2))
    n = space.size
    cmp = np.zeros((n, n), dtype=np.int8)
    seen = np.zeros((n, n), dtype=bool)
    np.fill_diagonal(seen, True)

    for k, entry in enumerate(doc["pairs"]):
        if not (isinstance(entry, (list, tuple)) and len(entry) == 5):
            raise RelationFormatError(f"entry {k}: expected [i1, j1, i2, j2, rel]")
        i1, j1, i2, j2, code = entry
        for name, v, hi in (("i1", i1, space.m1), ("j1", j1, space.m2), ("i2", i2, space.m1), ("j2", j2, space.m2)):
            if not isinstance(v, int) or not (0 <= v < hi):
                raise RelationFormatError(f"entry {k}: index {name}={v!r} out of range (0..{hi - 1})")
        if code not in _REL_CODES:
            raise RelationFormatError(f"entry {k}: relation code {code!r}, expected one of P, I, D")
        a = space.idx(i1, j1)
        b = space.idx(i2, j2)
        if a == b:
            if _REL_CODES[code] != 0:
                raise RelationFormatError(f"entry {k}: point compared unequal to itself")
            continue
        val = _REL_CODES[code]
        if seen[a, b]:
            if cmp[a, b] != val:
                raise RelationFormatError(
                    f"entry {k}: contradicts an earlier entry for the same pair"
                )
            raise RelationFormatError(f"entry {k}: duplicate of an earlier entry")
        cmp[a, b] = val
        cmp[b, a] = -val
        seen[a, b] = seen[b, a] = True

    if not seen.all():
        a, b = np.argwhere(~seen)[0]
        ia, ja = space.pos(int(a))
        ib, jb = space.pos(int(b))
        missing = n * (n - 1) // 2 - (int(seen.sum()) - n) // 2
        raise RelationFormatError(
            f"incomplete: {missing} pair(s) missing, e.g. {space.label(ia, ja)} vs {space.label(ib, jb)}"
        )
    return PreferenceRelation(space, cmp)


def relation_to_dict(rel: PreferenceRelation) -> dict:
    """Document form of a relation (inverse of :func:`relation_from_dict`)."""
    pairs = []
    n = rel.space.size
    for a in range(n):
        ia, ja = rel.space.pos(a)
        for b in range(a + 1, n):
            ib, jb = rel.space.pos(b)
            pairs.append([ia, ja, ib, jb, _REL_NAMES[int(rel.cmp[a, b])]])
    return {"x1": list(rel.space.x1), "x2": list(rel.space.x2), "pairs": pairs}


def load_relation(path: str) -> PreferenceRelation:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise RelationFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise RelationFormatError("top level must be a JSON object")
    return relation_from_dict(doc)


def save_relation(rel: PreferenceRelation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(relation_to_dict(rel), fh, indent=1)
        fh.write("\n")
