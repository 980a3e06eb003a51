"""Vectorized finite-space row: smooth<=>open and proper<=>universally closed.

One sweep per (X, Z, W) triple of tier spaces handles every monotone
u: X -> Z against every base-change leg v: W -> Z with exact boolean
tensors: the engine side does certified least/greatest-open scans through
the corner incidence tensor, the oracle side checks image-of-opens-open and
image-of-closures-closed independently.  No floats.
"""

from __future__ import annotations

import numpy as np

from .bases import FinSpaceBase, SpaceObj, spaces_upto
from .engines import _up_masks, _space_pre_table


def _hom_matrix(base, X, Z):
    """Monotone maps X -> Z as an index array (N, |X|) into Z.points."""
    maps = base.hom(X, Z)
    zidx = {z: i for i, z in enumerate(Z.points)}
    if not maps:
        return maps, np.zeros((0, len(X.points)), dtype=np.int64)
    arr = np.array([[zidx[m(x)] for x in X.points] for m in maps],
                   dtype=np.int64)
    return maps, arr


def _mask_bits(masks, width):
    return np.array([[(m >> i) & 1 for i in range(width)] for m in masks],
                    dtype=bool)


def _down_matrix(S: SpaceObj):
    n = len(S.points)
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    rel = set(S.leq)
    return np.array([[ (S.points[j], S.points[i]) in rel for j in range(n)]
                     for i in range(n)], dtype=bool)  # D[i,j] = pj <= pi


def _open_mid_tables(u_arr, X, Z):
    """Least/greatest open in Z per (open A of X, map u), certified scans."""
    opens_X = _up_masks(X)
    opens_Z = _up_masks(Z)
    nA, Nu = len(opens_X), u_arr.shape[0]
    nx, nz = len(X.points), len(Z.points)
    full = (1 << nz) - 1
    pre = np.zeros((Nu, len(opens_Z)), dtype=np.int64)  # preimage mask over X
    for bi, B in enumerate(opens_Z):
        hit = (np.take(np.array([(B >> j) & 1 for j in range(nz)], dtype=bool),
                       u_arr))           # (Nu, nx)
        pre[:, bi] = hit.astype(np.int64) @ (1 << np.arange(nx))
    mid_l = np.zeros((nA, Nu), dtype=np.int64)
    ok_l = np.ones((nA, Nu), dtype=bool)
    mid_r = np.zeros((nA, Nu), dtype=np.int64)
    ok_r = np.ones((nA, Nu), dtype=bool)
    openq = set(opens_Z)
    for ai, A in enumerate(opens_X):
        subset = (A & ~pre) == 0          # (Nu, nB): A <= pre[B]
        contain = (pre & ~A) == 0         # pre[B] <= A
        for ui in range(Nu):
            meet, found = full, False
            for bi, B in enumerate(opens_Z):
                if subset[ui, bi]:
                    meet &= B
                    found = True
            if not found or meet not in openq or \
                    A & ~pre[ui, opens_Z.index(meet)] != 0:
                ok_l[ai, ui] = False
            else:
                mid_l[ai, ui] = meet
            join, found = 0, False
            for bi, B in enumerate(opens_Z):
                if contain[ui, bi]:
                    join |= B
                    found = True
            if not found or join not in openq or \
                    pre[ui, opens_Z.index(join)] & ~A != 0:
                ok_r[ai, ui] = False
            else:
                mid_r[ai, ui] = join
    return mid_l, ok_l, mid_r, ok_r


def finite_space_row(max_points, ambient=None, chunk_elems=24_000_000):
    """Run the full row; returns a dict of verdict maps and mismatch lists.

    For every monotone map u between tier spaces: engine smooth/proper (all
    scope mates, certified scans) and oracle open/universally-closed, plus
    acyclic-vs-homeomorphism as an informative extra.
    """
    base = FinSpaceBase(ambient or max_points * max_points)
    tier = spaces_upto(max_points)
    smooth = {}
    proper = {}
    open_or = {}
    closed_or = {}
    for Z in tier:
        opens_Z = _up_masks(Z)
        nz = len(Z.points)
        blocks = []
        for X in tier:
            maps_u, U = _hom_matrix(base, X, Z)
            if not maps_u:
                continue
            blocks.append((X, maps_u, U))
        for X, maps_u, U in blocks:
            opens_X = _up_masks(X)
            nx = len(X.points)
            POWA = _mask_bits(opens_X, nx)            # (nA, nx)
            nA, Nu = POWA.shape[0], U.shape[0]
            mid_l, okl, mid_r, okr = _open_mid_tables(U, X, Z)
            sm = okl.all(axis=0)
            pr = okr.all(axis=0)
            # oracle: image of opens open / image of point-closures closed
            oracle_open = np.ones(Nu, dtype=bool)
            for ai in range(nA):
                img = np.zeros((Nu, nz), dtype=bool)
                for i in range(nx):
                    if POWA[ai, i]:
                        np.put_along_axis(img, U[:, i:i + 1], True, axis=1)
                up = _upclose_bits(Z, img)
                oracle_open &= (up == img).all(axis=1)
            oracle_closed = np.ones(Nu, dtype=bool)
            for W in tier:
                maps_v, V = _hom_matrix(base, W, Z)
                if not maps_v:
                    continue
                nw = len(W.points)
                Nv = V.shape[0]
                opens_W = _up_masks(W)
                nB = len(opens_W)
                OWbits = _mask_bits(opens_W, nw)      # (nB, nw)
                OW = np.array(opens_W, dtype=np.int64)
                openq_W = np.zeros(1 << nw, dtype=bool)
                openq_W[np.array(opens_W, dtype=np.int64)] = True
                DOWNW = _down_matrix(W)
                DOWNX = _down_matrix(X)
                prevtab = np.zeros((Nv, 1 << nz), dtype=np.int64)
                for vi, v in enumerate(maps_v):
                    pt = _space_pre_table(v)
                    prevtab[vi] = np.array(pt, dtype=np.int64)
                u_chunk = max(1, chunk_elems // max(1, Nv * nA * nB))
                for lo in range(0, Nu, u_chunk):
                    Uc = U[lo:lo + u_chunk]
                    cu = Uc.shape[0]
                    E = Uc[:, :, None, None] == V[None, None, :, :]
                    # (cu, nx, Nv, nw)
                    e8 = E.astype(np.uint8)
                    T1 = np.tensordot(POWA.astype(np.uint8), e8,
                                      axes=([1], [1])) > 0
                    T2 = np.tensordot((~POWA).astype(np.uint8), e8,
                                      axes=([1], [1])) > 0
                    # (nA, cu, Nv, nw)
                    nOW = (~OWbits).astype(np.uint8)
                    OWu = OWbits.astype(np.uint8)
                    v_l = ~(np.tensordot(T1.astype(np.uint8), nOW.T,
                                         axes=([3], [0])) > 0)
                    v_r = ~(np.tensordot(T2.astype(np.uint8), OWu.T,
                                         axes=([3], [0])) > 0)
                    # (nA, cu, Nv, nB): valid masks per side
                    full_w = (1 << nw) - 1
                    meet = np.where(v_l, (OW ^ full_w)[None, None, None, :], 0)
                    meet = np.bitwise_or.reduce(meet, axis=3)
                    meet = full_w ^ meet
                    join = np.where(v_r, OW[None, None, None, :], 0)
                    join = np.bitwise_or.reduce(join, axis=3)
                    found_l = v_l.any(axis=3)
                    found_r = v_r.any(axis=3)
                    meet_open = openq_W[meet]
                    join_open = openq_W[join]
                    # re-validate the extremal candidate against the corner
                    mbits = ((meet[:, :, :, None] >> np.arange(nw)) & 1) \
                        .astype(bool)
                    jbits = ((join[:, :, :, None] >> np.arange(nw)) & 1) \
                        .astype(bool)
                    meet_valid = ~(T1 & ~mbits).any(axis=3)
                    join_valid = ~(T2 & jbits).any(axis=3)
                    lhs_ok = found_l & meet_open & meet_valid
                    rhs_ok = found_r & join_open & join_valid
                    # through-base side: gather pre_v of the Z-extremals
                    midl_c = mid_l[:, lo:lo + u_chunk]
                    midr_c = mid_r[:, lo:lo + u_chunk]
                    rhs_l = prevtab[:, midl_c].transpose(1, 2, 0)
                    rhs_r = prevtab[:, midr_c].transpose(1, 2, 0)
                    okl_c = okl[:, lo:lo + u_chunk, None]
                    okr_c = okr[:, lo:lo + u_chunk, None]
                    left_total = lhs_ok & okl_c & (meet == rhs_l)
                    right_total = rhs_ok & okr_c & (join == rhs_r)
                    sm[lo:lo + u_chunk] &= left_total.all(axis=(0, 2))
                    pr[lo:lo + u_chunk] &= right_total.all(axis=(0, 2))
                    # oracle: closedness of every base change (corner route)
                    R = np.tensordot(DOWNX.astype(np.uint8), e8,
                                     axes=([1], [1])) > 0
                    # R[x, c, v, w'] = exists x' <= x with u x' = v w'
                    D = DOWNW[None, None, None, :, :] & \
                        R.transpose(1, 2, 0, 3)[:, :, :, None, :]
                    # D[c, v, x, w, w'] = w' <= w and R[x, ., ., w']
                    spread = np.einsum("cvxab,bd->cvxad",
                                       D.astype(np.uint8),
                                       DOWNW.astype(np.uint8)) > 0
                    viol = (spread & ~D).any(axis=4)
                    corner = E.transpose(0, 2, 1, 3)
                    bad = (viol & corner).any(axis=(2, 3))
                    oracle_closed[lo:lo + u_chunk] &= ~bad.any(axis=1)
            for ui, m in enumerate(maps_u):
                smooth[m] = bool(sm[ui])
                proper[m] = bool(pr[ui])
                open_or[m] = bool(oracle_open[ui])
                closed_or[m] = bool(oracle_closed[ui])
    mism_open = [m for m in smooth if smooth[m] != open_or[m]]
    mism_closed = [m for m in proper if proper[m] != closed_or[m]]
    return {"maps": len(smooth), "smooth": smooth, "proper": proper,
            "open_oracle": open_or, "closed_oracle": closed_or,
            "mismatch_open": mism_open, "mismatch_closed": mism_closed}


def _upclose_bits(Z, img_bits):
    """Upward closure of point-sets given as boolean rows over Z.points."""
    n = len(Z.points)
    rel = set(Z.leq)
    UP = np.array([[(Z.points[i], Z.points[j]) in rel for j in range(n)]
                   for i in range(n)], dtype=bool)
    return (img_bits.astype(np.uint8) @ UP.astype(np.uint8)) > 0
