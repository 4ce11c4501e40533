"""Vectorized searches for cancellation-pattern violations.

Every cancellation-style condition in this package quantifies over an
octuple of points built from four first-axis levels (a, b, c, d) and
four second-axis levels (p, q, r, s), with three weak-preference
premises and one conclusion:

    (a,p) <= (b,q)  and  (a,r) >= (b,s)  and  (c,p) >= (d,q)
        implies  (c,r) >= (d,s),

where each of the eight points is additionally required to lie inside a
per-slot membership mask.  A violation is the same pattern with the
conclusion strictly reversed.  The key structural fact, which makes the
search cheap, is that once (p, q, r, s) is fixed the pair (a, b) is
constrained only by the first two premises and (c, d) only by the last
two, so existence reduces to two boolean matrix products.

Witness tuples are reconstructed lexicographically in the documented
scan order, so reruns are deterministic and tests can replay them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from choqfit.relation import PreferenceRelation, ProductSpace

__all__ = [
    "ScanContext",
    "octuple_any",
    "octuple_witness",
    "pair_rod_any",
    "pair_rod_witness",
    "transpose_relation",
]


def transpose_relation(rel: PreferenceRelation) -> PreferenceRelation:
    """The same preference data with the two axes swapped."""
    m1, m2 = rel.m1, rel.m2
    space = ProductSpace(rel.space.x2, rel.space.x1)
    cmp = np.ascontiguousarray(
        rel.cmp4.transpose(1, 0, 3, 2).reshape(m2 * m1, m2 * m1)
    )
    return PreferenceRelation(space, cmp)


class ScanContext:
    """Precomputed boolean tensors for octuple scans over one relation.

    The tensors are indexed [p, q, a, b] and answer "(a,p) REL (b,q)"
    for each of the five comparison senses.  Building them once per
    relation keeps repeated cone scans (region classification probes
    every anchor) from re-deriving the same arrays.
    """

    def __init__(self, rel: PreferenceRelation):
        self.rel = rel
        self.m1 = rel.m1
        self.m2 = rel.m2
        c4 = rel.cmp4
        t = c4.transpose(1, 3, 0, 2)  # [p, q, a, b] = cmp((a,p), (b,q))
        self.le = t <= 0
        self.ge = t >= 0
        self.lt = t < 0
        self.eq = t == 0
        self.c4 = c4


def _slot(mem_row: np.ndarray, mem_col: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Broadcasting helpers for masks indexed [level, partner]: the row
    # slot of a [p,q,a,b] tensor is (a,p), the column slot (b,q).
    return mem_row.T[:, None, :, None], mem_col.T[None, :, None, :]


def octuple_witness(
    ctx: ScanContext,
    masks: Sequence[np.ndarray],
) -> tuple[int, ...] | None:
    """First violating octuple (a,b,c,d,p,q,r,s), or None.

    ``masks`` gives eight (m1, m2) membership masks, one per point in
    the order (a,p), (b,q), (a,r), (b,s), (c,p), (d,q), (c,r), (d,s).
    Passing the same mask eight times checks plain triple cancellation
    on that point set.

    Scan order for the returned witness: lexicographic over
    (p, q, r, s), then (a, b), then (c, d).
    """
    mA, mB, mC, mD, mE, mF, mG, mH = masks
    m1, m2 = ctx.m1, ctx.m2

    ra, ca = _slot(mA, mB)
    X = (ctx.le & ra & ca).reshape(m2 * m2, m1 * m1)  # [pq, ab]: ap <= bq
    rb, cb = _slot(mC, mD)
    Y = (ctx.ge & rb & cb).reshape(m2 * m2, m1 * m1)  # [rs, ab]: ar >= bs
    rc, cc = _slot(mE, mF)
    Z = (ctx.ge & rc & cc).reshape(m2 * m2, m1 * m1)  # [pq, cd]: cp >= dq
    rd, cd_ = _slot(mG, mH)
    W = (ctx.lt & rd & cd_).reshape(m2 * m2, m1 * m1)  # [rs, cd]: cr < ds

    Xf = X.astype(np.float32)
    AB = (Xf @ Y.astype(np.float32).T) > 0  # [pq, rs]: some (a,b) fits
    CD = (Z.astype(np.float32) @ W.astype(np.float32).T) > 0
    V = AB & CD
    if not V.any():
        return None

    pq, rs = map(int, np.argwhere(V)[0])
    p, q = divmod(pq, m2)
    r, s = divmod(rs, m2)
    ab = int(np.argmax(X[pq] & Y[rs]))
    a, b = divmod(ab, m1)
    cd = int(np.argmax(Z[pq] & W[rs]))
    c, d = divmod(cd, m1)
    return a, b, c, d, p, q, r, s


def octuple_any(ctx: ScanContext, masks: Sequence[np.ndarray]) -> bool:
    """Whether any octuple satisfies the three premises and memberships.

    Mirrors :func:`octuple_witness` with the conclusion slot relaxed to
    bare membership, so it answers "does the premise pattern occur at
    all", which separates a vacuously holding condition from one with
    actual instances.
    """
    mA, mB, mC, mD, mE, mF, mG, mH = masks
    m1, m2 = ctx.m1, ctx.m2

    ra, ca = _slot(mA, mB)
    X = (ctx.le & ra & ca).reshape(m2 * m2, m1 * m1)
    rb, cb = _slot(mC, mD)
    Y = (ctx.ge & rb & cb).reshape(m2 * m2, m1 * m1)
    rc, cc = _slot(mE, mF)
    Z = (ctx.ge & rc & cc).reshape(m2 * m2, m1 * m1)
    rd, cd_ = _slot(mG, mH)
    W = (rd & cd_ & np.ones_like(ctx.le)).reshape(m2 * m2, m1 * m1)

    AB = (X.astype(np.float32) @ Y.astype(np.float32).T) > 0
    CD = (Z.astype(np.float32) @ W.astype(np.float32).T) > 0
    return bool((AB & CD).any())


def pair_rod_witness(
    ctx: ScanContext,
    r1: np.ndarray,
    r2: np.ndarray,
    r3: np.ndarray,
    r4: np.ndarray,
) -> tuple[int, ...] | None:
    """First violation of the projected-measurement condition.

    The pattern has four first-axis levels a, b, c, d and works in four
    parts, each confined to its own membership mask:

    1. a premise comparison inside ``r1``: (a,p) <= (b,q) and
       (c,p) >= (d,q) for some p, q;
    2. each of a, b is matched through a shared anchor (x0, y0) with
       (a,y0) ~ (x0, alpha), (b,y0) ~ (x0, beta); likewise c, d through
       (x1, y1) giving gamma, delta.  The left-hand points (a,y0) etc.
       live in ``r2``;
    3. the projected points (x0, alpha) etc. live in ``r3``;
    4. a rod pair e, f with (e,alpha) >= (f,beta), all four rod points
       inside ``r4``, but (e,gamma) < (f,delta).

    Returns (a, b, c, d, p, q, x0, y0, x1, y1, alpha, beta, gamma,
    delta, e, f) or None.  Scan order: (a, b) then (c, d) lexicographic,
    then (p, q), then (alpha, beta), then (gamma, delta), then anchors,
    then (e, f).
    """
    m1, m2 = ctx.m1, ctx.m2
    c4 = ctx.c4

    # Part 1: premise stack over the shared columns (p, q).
    ga = r1[:, None, :, None] & r1[None, :, None, :]  # [a, b, p, q] memberships
    X = (ctx.le.transpose(2, 3, 0, 1) & ga).reshape(m1 * m1, m2 * m2)
    Z = (ctx.ge.transpose(2, 3, 0, 1) & ga).reshape(m1 * m1, m2 * m2)
    S = (X.astype(np.float32) @ Z.astype(np.float32).T) > 0  # [ab, cd]
    if not S.any():
        return None

    # Parts 2 + 3: pair projection through a shared anchor.
    eq4 = ctx.eq  # [y0, alpha, a, x0] = (a,y0) ~ (x0,alpha)
    P = np.zeros((m1, m1, m2, m2), dtype=bool)  # [a, b, alpha, beta]
    E_anchors: list[tuple[int, int, np.ndarray]] = []
    for x0 in range(m1):
        for y0 in range(m2):
            E = eq4[y0, :, :, x0].T & r2[:, y0][:, None] & r3[x0, :][None, :]
            if E.any():
                E_anchors.append((x0, y0, E))
                P |= E[:, None, :, None] & E[None, :, None, :]
    Pf = P.reshape(m1 * m1, m2 * m2)

    # Part 4: rods measure the projected levels.
    gr = r4[:, None, :, None] & r4[None, :, None, :]  # [e, f, alpha, beta]
    U = (ctx.ge.transpose(2, 3, 0, 1) & gr).reshape(m1 * m1, m2 * m2)
    V4 = (ctx.lt.transpose(2, 3, 0, 1) & gr).reshape(m1 * m1, m2 * m2)
    Q = (U.astype(np.float32).T @ V4.astype(np.float32)) > 0  # [alphabeta, gammadelta]

    M = (Pf.astype(np.float32) @ Q.astype(np.float32)) > 0  # [ab, gammadelta]
    V2 = (M.astype(np.float32) @ Pf.astype(np.float32).T) > 0  # [ab, cd]
    bad = S & V2
    if not bad.any():
        return None

    ab, cd = map(int, np.argwhere(bad)[0])
    a, b = divmod(ab, m1)
    c, d = divmod(cd, m1)
    pq = int(np.argmax(X[ab] & Z[cd]))
    p, q = divmod(pq, m2)
    qp_row = (Q.astype(np.float32) @ Pf[cd].astype(np.float32)) > 0
    albe = int(np.argmax(Pf[ab] & qp_row))
    alpha, beta = divmod(albe, m2)
    gade = int(np.argmax(Q[albe] & Pf[cd]))
    gamma, delta = divmod(gade, m2)
    x0 = y0 = x1 = y1 = -1
    for ax, ay, E in E_anchors:
        if E[a, alpha] and E[b, beta]:
            x0, y0 = ax, ay
            break
    for ax, ay, E in E_anchors:
        if E[c, gamma] and E[d, delta]:
            x1, y1 = ax, ay
            break
    ef = int(np.argmax(U[:, albe] & V4[:, gade]))
    e, f = divmod(ef, m1)
    return a, b, c, d, p, q, x0, y0, x1, y1, alpha, beta, gamma, delta, e, f


def pair_rod_any(
    ctx: ScanContext,
    r1: np.ndarray,
    r2: np.ndarray,
    r3: np.ndarray,
    r4: np.ndarray,
) -> bool:
    """Whether the full premise chain of :func:`pair_rod_witness` occurs.

    Same parts 1-3, with the rod conclusion relaxed to bare membership:
    True when some premise comparison, both anchored projections, and a
    rod premise coexist, regardless of how the conclusion rod compares.
    """
    m1, m2 = ctx.m1, ctx.m2

    ga = r1[:, None, :, None] & r1[None, :, None, :]
    X = (ctx.le.transpose(2, 3, 0, 1) & ga).reshape(m1 * m1, m2 * m2)
    Z = (ctx.ge.transpose(2, 3, 0, 1) & ga).reshape(m1 * m1, m2 * m2)
    S = (X.astype(np.float32) @ Z.astype(np.float32).T) > 0
    if not S.any():
        return False

    eq4 = ctx.eq
    P = np.zeros((m1, m1, m2, m2), dtype=bool)
    for x0 in range(m1):
        for y0 in range(m2):
            E = eq4[y0, :, :, x0].T & r2[:, y0][:, None] & r3[x0, :][None, :]
            if E.any():
                P |= E[:, None, :, None] & E[None, :, None, :]
    Pf = P.reshape(m1 * m1, m2 * m2).astype(np.float32)

    gr = r4[:, None, :, None] & r4[None, :, None, :]
    U = (ctx.ge.transpose(2, 3, 0, 1) & gr).reshape(m1 * m1, m2 * m2)
    Vm = gr.reshape(m1 * m1, m2 * m2)
    Q = (U.astype(np.float32).T @ Vm.astype(np.float32)) > 0

    M = (Pf @ Q.astype(np.float32)) > 0
    V2 = (M.astype(np.float32) @ Pf.T) > 0
    return bool((S & V2).any())
