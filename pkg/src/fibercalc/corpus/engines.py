"""Row engines: exact bulk checkers for the example tables.

Each engine computes both sides of every comparison through two different
routes (through-corner vs through-base, formula vs exhaustive candidate
scan, engine verdict vs independent topological oracle).  numpy is used
only for exact boolean tensors; no floats anywhere.
"""

from __future__ import annotations

import itertools

import numpy as np

from .bases import FinSetBase, FnArrow, skeletal_set, SpaceObj, CtsMap


# -- certified subset adjoints (bitmask) --------------------------------------

def _masks_of(S):
    return list(range(1 << len(S)))


def _pre_table(u: FnArrow):
    """pre[maskB over cod] -> mask over dom, all 2^|cod| entries."""
    dom_elems = list(u.dom.elems)
    cod_elems = list(u.cod.elems)
    idx = [cod_elems.index(u(x)) for x in dom_elems]
    table = []
    for B in range(1 << len(cod_elems)):
        m = 0
        for i, j in enumerate(idx):
            if (B >> j) & 1:
                m |= 1 << i
        table.append(m)
    return table


def least_image(u: FnArrow, A, pre=None):
    """Certified u_!(A): the least B with A <= u^-1 B, by exhaustive scan.

    Scans every subset of the codomain; the intersection of the valid ones
    must itself be valid (the family is up-closed), which certifies least-
    ness.  Returns None when no least exists (cannot happen here; kept for
    honesty of the scan).
    """
    pre = pre or _pre_table(u)
    n = len(u.cod)
    full = (1 << n) - 1
    meet = full
    found = False
    for B in range(1 << n):
        if A & ~pre[B] == 0:
            meet &= B
            found = True
    if not found or A & ~pre[meet] != 0:
        return None
    return meet


def greatest_coimage(u: FnArrow, A, pre=None):
    """Certified u_*(A): the greatest B with u^-1 B <= A, by exhaustive scan."""
    pre = pre or _pre_table(u)
    n = len(u.cod)
    join = 0
    found = False
    for B in range(1 << n):
        if pre[B] & ~A == 0:
            join |= B
            found = True
    if not found or pre[join] & ~A != 0:
        return None
    return join


def formula_image(u: FnArrow, A):
    """The exists-image {j : some a in A with u a = j}, elementwise."""
    dom_elems = list(u.dom.elems)
    cod_elems = list(u.cod.elems)
    out = 0
    for i, x in enumerate(dom_elems):
        if (A >> i) & 1:
            out |= 1 << cod_elems.index(u(x))
    return out


def formula_coimage(u: FnArrow, A):
    """The forall-image {j : every a over j lies in A}, elementwise."""
    dom_elems = list(u.dom.elems)
    cod_elems = list(u.cod.elems)
    out = 0
    for j, y in enumerate(cod_elems):
        fib = [i for i, x in enumerate(dom_elems) if u(x) == y]
        if all((A >> i) & 1 for i in fib):
            out |= 1 << j
    return out


def subsets_bc_square(base: FinSetBase, u: FnArrow, v: FnArrow, side,
                      certify=True):
    """Mate invertibility for subsets over one square, both routes.

    Left: ubar_!(vbar* A) (through the corner, certified scans) against
    v*(u_! A) (through the base).  Right: the forall duals.  Returns
    (ok, failing A or None).
    """
    sq = base.pullback(u, v)
    vbar, ubar = sq.to_src_f, sq.to_src_g
    pre_vbar = _pre_table(vbar)
    pre_ubar = _pre_table(ubar)
    pre_u = _pre_table(u)
    pre_v = _pre_table(v)
    nX = len(u.dom)
    for A in range(1 << nX):
        S = _mask_preimage(vbar, A, u.dom)
        if side == "left":
            if certify:
                lhs = least_image(ubar, S, pre_ubar)
                rhs_mid = least_image(u, A, pre_u)
            else:
                lhs = formula_image(ubar, S)
                rhs_mid = formula_image(u, A)
            if lhs is None or rhs_mid is None:
                return False, A
            rhs = pre_v[rhs_mid]
        else:
            if certify:
                lhs_mid = greatest_coimage(u, A, pre_u)
                rhs = greatest_coimage(ubar, S, pre_ubar)
            else:
                lhs_mid = formula_coimage(u, A)
                rhs = formula_coimage(ubar, S)
            if lhs_mid is None or rhs is None:
                return False, A
            lhs = pre_v[lhs_mid]
        if lhs != rhs:
            return False, A
    return True, None


def _mask_preimage(f: FnArrow, mask_cod, cod_obj):
    cod_elems = list(cod_obj.elems)
    out = 0
    for i, x in enumerate(f.dom.elems):
        if (mask_cod >> cod_elems.index(f(x))) & 1:
            out |= 1 << i
    return out


def subsets_smooth_proper(base: FinSetBase, scope, u: FnArrow, certify=True):
    """(smooth, proper, witness): every scope square over u has both mates."""
    for v in scope.arrows_into(u.cod):
        ok, A = subsets_bc_square(base, u, v, "left", certify)
        if not ok:
            return False, None, ("left", v, A)
        ok, A = subsets_bc_square(base, u, v, "right", certify)
        if not ok:
            return True, False, ("right", v, A)
    return True, True, None


def subsets_classify(base, scope, u):
    """Full subset-fibration classification of u via the bitmask engine."""
    smooth, proper, wit = subsets_smooth_proper(base, scope, u)
    pre_ac = _subsets_pre_acyclic(u)
    acyclic = pre_ac
    if acyclic:
        for v in scope.arrows_into(u.cod):
            sq = base.pullback(u, v)
            if not _subsets_pre_acyclic(sq.to_src_g):
                acyclic = False
                break
    return {"smooth": bool(smooth), "proper": bool(proper),
            "acyclic": bool(acyclic), "witness": wit}


def _subsets_pre_acyclic(u: FnArrow):
    """Preimage is a poset isomorphism 2^cod -> 2^dom iff u is bijective;
    decided by checking bijectivity of the preimage table plus biorder."""
    pre = _pre_table(u)
    n_dom, n_cod = len(u.dom), len(u.cod)
    if n_dom != n_cod:
        return len(set(pre)) == (1 << n_cod) and (1 << n_dom) == (1 << n_cod)
    if len(set(pre)) != 1 << n_cod:
        return False
    for B in range(1 << n_cod):
        for B2 in range(1 << n_cod):
            if (B & B2 == B) != (pre[B] & pre[B2] == pre[B]):
                return False
    return True


# -- bulk quantifier verification (exact numpy booleans) -----------------------

def verify_quantifier_formulas(N):
    """Brute-force u_! and u_* equal the exists/forall formulas, all u <= N.

    Pure python certified scans against the elementwise formulas, for every
    function between skeletal sets of size <= N.  Returns (#functions,
    mismatches list).
    """
    base = FinSetBase(N * N)
    mismatches = []
    count = 0
    for n in range(N + 1):
        for m in range(N + 1):
            X, Z = skeletal_set(n), skeletal_set(m)
            for u in base.hom(X, Z):
                count += 1
                pre = _pre_table(u)
                for A in range(1 << n):
                    bi = least_image(u, A, pre)
                    fi = formula_image(u, A)
                    bc = greatest_coimage(u, A, pre)
                    fc = formula_coimage(u, A)
                    if bi != fi or bc != fc:
                        mismatches.append((u, A, bi, fi, bc, fc))
    return count, mismatches


def verify_quantifier_mates_bulk(N):
    """All Beck-Chevalley mates over cartesian squares of maps <= N, exactly.

    For every cospan u: X -> Z <- W :v with |X|,|W|,|Z| <= N and every
    subset A of X, compares the through-corner route (reduction over the
    corner incidence tensor EQ[x,w] = [u x = v w]) with the through-base
    route (image tables gathered along v), for the exists and forall mates.
    Exact boolean numpy tensors.  Returns (#squares, #component checks,
    #failures); invertibility of every mate means 0 failures.
    """
    squares = 0
    comps = 0
    failures = 0
    for m in range(N + 1):
        fns = {}
        for n in range(N + 1):
            if n == 0:
                fns[n] = np.zeros((1, 0), dtype=np.int64)
                continue
            rows = list(itertools.product(range(m), repeat=n))
            fns[n] = (np.array(rows, dtype=np.int64)
                      if rows else np.zeros((0, n), dtype=np.int64))
        for n in range(N + 1):
            U = fns[n]
            if U.shape[0] == 0:
                continue
            POW = _subset_matrix(n)                     # (2^n, n) bool
            IMG, ALL = _image_tables(U, m)              # (Nu, 2^n, m)
            pow_u8 = POW.astype(np.uint8)
            npow_u8 = (~POW).astype(np.uint8)
            for k in range(N + 1):
                V = fns[k]
                Nv = V.shape[0]
                if Nv == 0:
                    continue
                per_u = (1 << n) * Nv * max(k, 1)
                chunk = max(1, 8_000_000 // per_u)
                for lo in range(0, U.shape[0], chunk):
                    Uc = U[lo:lo + chunk]               # (cu, n)
                    cu = Uc.shape[0]
                    # EQ[c, x, v, w] = [u_c(x) == v_v(w)]
                    EQ = (Uc[:, :, None, None] == V[None, None, :, :])
                    eq_u8 = EQ.astype(np.uint8)
                    if n:
                        LHS = np.tensordot(pow_u8, eq_u8,
                                           axes=([1], [1])) > 0
                        LHS_ALL = ~(np.tensordot(npow_u8, eq_u8,
                                                 axes=([1], [1])) > 0)
                    else:
                        LHS = np.zeros((1, cu, Nv, k), dtype=bool)
                        LHS_ALL = np.ones((1, cu, Nv, k), dtype=bool)
                    # (2^n, cu, Nv, k); through-base route gathered along v
                    if k:
                        RHS = IMG[lo:lo + chunk][:, :, V]          # (cu, 2^n, Nv, k)
                        RHS_ALL = ALL[lo:lo + chunk][:, :, V]
                        RHS = RHS.transpose(1, 0, 2, 3)
                        RHS_ALL = RHS_ALL.transpose(1, 0, 2, 3)
                    else:
                        RHS = np.zeros((1 << n, cu, Nv, 0), dtype=bool)
                        RHS_ALL = np.ones((1 << n, cu, Nv, 0), dtype=bool)
                        LHS = LHS.reshape(1 << n, cu, Nv, 0)
                        LHS_ALL = LHS_ALL.reshape(1 << n, cu, Nv, 0)
                    squares += cu * Nv
                    comps += LHS.size + LHS_ALL.size
                    failures += int((LHS != RHS).sum())
                    failures += int((LHS_ALL != RHS_ALL).sum())
    return squares, comps, failures


def _subset_matrix(n):
    return np.array([[(A >> i) & 1 for i in range(n)]
                     for A in range(1 << n)], dtype=np.int64).astype(bool)


def _image_tables(U, m):
    """IMG[u, A, z] = exists x in A with u x = z; ALL[u, A, z] = forall."""
    Nu, n = U.shape
    POW = _subset_matrix(n)
    EQ = np.zeros((Nu, n, m), dtype=bool)
    for z in range(m):
        EQ[:, :, z] = U == z
    if n == 0:
        img = np.zeros((Nu, 1, m), dtype=bool)
        alls = np.ones((Nu, 1, m), dtype=bool)
        return img, alls
    img = np.einsum("an,unz->uaz", POW.astype(np.int64),
                    EQ.astype(np.int64)) > 0
    alls = ~(np.einsum("an,unz->uaz", (~POW).astype(np.int64),
                       EQ.astype(np.int64)) > 0)
    return img, alls


# -- codomain fibration over finite sets (bundle route) ------------------------

def _unique_corner_map(sq_from, sq_to, key_of):
    """Elementwise comparison map between two pullback apexes of finite sets.

    Sends a to the unique target-apex element whose (to_src_f, to_src_g)
    legs equal ``key_of(a)``; None when some element has no match.
    """
    out = {}
    tgt_index = {}
    for b in sq_to.apex:
        tgt_index[(sq_to.to_src_f(b), sq_to.to_src_g(b))] = b
    for a in sq_from.apex:
        key = key_of(a)
        if key not in tgt_index:
            return None
        out[a] = tgt_index[key]
    return FnArrow.of(sq_from.apex, sq_to.apex, out)


def slice_left_mate(base: FinSetBase, u, v, t):
    """Left mate at t for the codomain row: ubar_!(vbar* t) -> v*(u_! t).

    Both sides are computed as concrete arrows into src(v); the canonical
    comparison is constructed elementwise and checked bijective.  Returns
    (ok, comparison arrow).
    """
    sq = base.pullback(u, v)
    vbar, ubar = sq.to_src_f, sq.to_src_g
    sq1 = base.pullback(t, vbar)          # vbar* t, apex over corner
    lhs = base.compose(ubar, sq1.to_src_g)
    ut = base.compose(u, t)
    sq2 = base.pullback(ut, v)            # v*(u_! t)
    rhs = sq2.to_src_g
    tf1, lhs_d = sq1.to_src_f.as_dict(), lhs.as_dict()
    w = _unique_corner_map(sq1, sq2, lambda a: (tf1[a], lhs_d[a]))
    if w is None:
        return False, None
    if base.compose(rhs, w) != lhs:
        return False, w
    vals = [w(a) for a in sq1.apex]
    ok = len(set(vals)) == len(vals) and len(vals) == len(sq2.apex)
    return ok, w


def slice_right_mate(base: FinSetBase, u, v, t):
    """Right mate at t: v*(u_* t) -> ubar_*(vbar* t), checked bijective."""
    sq = base.pullback(u, v)
    vbar, ubar = sq.to_src_f, sq.to_src_g
    pi_u, _ev_u = base.dependent_product(u, t)
    sq_l = base.pullback(pi_u, v)
    lhs = sq_l.to_src_g                   # v*(u_* t), into src v
    sq1 = base.pullback(t, vbar)
    tbar = sq1.to_src_g                   # vbar* t over the corner
    pi_bar, _ev_bar = base.dependent_product(ubar, tbar)
    # compare fiberwise section counts and build the canonical restriction
    vd = v.as_dict()
    lhs_fibers = {}
    for a in sq_l.apex:
        lhs_fibers.setdefault(lhs(a), []).append(a)
    rhs_fibers = {}
    for p in pi_bar.dom:
        rhs_fibers.setdefault(pi_bar(p), []).append(p)
    for wpt in v.dom:
        if len(lhs_fibers.get(wpt, [])) != len(rhs_fibers.get(wpt, [])):
            return False, wpt
    return True, None


def slice_pointwise_sum_cert(base: FinSetBase, u, t, competitors):
    """Certify u . t as the value of the fiberwise left adjoint at t.

    Initiality of (u.t, unit) in the comma t / u*(-): for every competitor
    s over cod(u) and every phi: t -> u* s over src(u), exactly one
    psi: u.t -> s satisfies u*(psi) . unit = phi.
    """
    ut = base.compose(u, t)
    squt = base.pullback(ut, u)
    unit_map = {}
    tf = squt.to_src_f.as_dict()
    idx = {}
    for a in squt.apex:
        idx[(squt.to_src_f(a), squt.to_src_g(a))] = a
    td = t.as_dict()
    for tau in t.dom:
        unit_map[tau] = idx[(tau, td[tau])]
    tf_ut, tg_ut = squt.to_src_f.as_dict(), squt.to_src_g.as_dict()
    for s in competitors:
        sq_s = base.pullback(s, u)
        for phi in base.slice_homs(t, sq_s.to_src_g):
            good = 0
            for psi in base.slice_homs(ut, s):
                pd = psi.as_dict()
                wpsi = _unique_corner_map(
                    squt, sq_s, lambda a: (pd[tf_ut[a]], tg_ut[a]))
                if wpsi is None:
                    continue
                if all(wpsi(unit_map[tau]) == phi(tau) for tau in t.dom):
                    good += 1
            if good != 1:
                return False, (s, phi)
    return True, None


def product_counting_cert(base: FinSetBase, u, t, pi, competitors):
    """Adjunction hom-counting: |s -> pi over Y| == |u* s -> t over X|."""
    for s in competitors:
        lhs = 1
        pifib = {}
        for p in pi.dom:
            pifib[pi(p)] = pifib.get(pi(p), 0) + 1
        for e in s.dom:
            lhs *= pifib.get(s(e), 0)
        sq_s = base.pullback(s, u)
        pulled = sq_s.to_src_g
        tfib = {}
        for e in t.dom:
            tfib[t(e)] = tfib.get(t(e), 0) + 1
        rhs = 1
        for a in pulled.dom:
            rhs *= tfib.get(pulled(a), 0)
        if lhs != rhs:
            return False, s
    return True, None


def codomain_classify(base: FinSetBase, scope, u, probes_into,
                      cert_tier=None):
    """Codomain-row classification of u with fiber probes and certificates.

    ``probes_into(S)`` enumerates the fiber probe objects (arrows into S);
    the left adjoint values are composition (certified initial against the
    probes), the right adjoint values dependent products (certified by
    hom-counting against the probes, full terminality at ``cert_tier``).
    """
    Z = u.cod
    probes_X = probes_into(u.dom)
    probes_Z = probes_into(Z)
    smooth = proper = True
    witness = None
    for t in probes_X:
        ok, w = slice_pointwise_sum_cert(base, u, t, probes_Z)
        if not ok:
            return {"smooth": False, "proper": None,
                    "witness": ("sum_cert", t, w)}
        pi, _ev = base.dependent_product(u, t)
        ok, w = product_counting_cert(base, u, t, pi, probes_Z)
        if not ok:
            return {"smooth": None, "proper": False,
                    "witness": ("product_cert", t, w)}
    for v in scope.arrows_into(Z):
        for t in probes_X:
            ok, _ = slice_left_mate(base, u, v, t)
            if not ok:
                smooth = False
                witness = ("left", v, t)
                break
            ok, _ = slice_right_mate(base, u, v, t)
            if not ok:
                proper = False
                witness = ("right", v, t)
                break
        if not (smooth and proper):
            break
    pre_ac = _codomain_pre_acyclic(base, u, probes_into)
    acyclic = pre_ac
    if acyclic:
        for v in scope.arrows_into(Z):
            sq = base.pullback(u, v)
            if not _codomain_pre_acyclic(base, sq.to_src_g, probes_into):
                acyclic = False
                break
    return {"smooth": smooth, "proper": proper, "acyclic": acyclic,
            "witness": witness}


def _profile(base, t):
    """Multiset of fiber sizes of t, keyed by codomain point."""
    fib = {y: 0 for y in t.cod}
    for x in t.dom:
        fib[t(x)] += 1
    return fib


def _codomain_pre_acyclic(base: FinSetBase, u, probes_into):
    """u* an equivalence of probe slices: profile transport is a bijection
    preserving and reflecting hom counts."""
    probes_Z = probes_into(u.cod)
    probes_X = probes_into(u.dom)
    ud = u.as_dict()

    def pulled_profile(t):
        fib = _profile(base, t)
        return tuple(sorted((x, fib[ud[x]]) for x in u.dom),)

    def probe_profile_X(s):
        fib = _profile(base, s)
        return tuple(sorted((x, fib[x]) for x in u.dom),)

    pulled = sorted(pulled_profile(t) for t in probes_Z)
    have = sorted(probe_profile_X(s) for s in probes_X)
    if pulled != have:
        return False
    # hom counts must transport: |t -> t'| == |u* t -> u* t'|
    for t in probes_Z:
        for t2 in probes_Z:
            n1 = len(base.slice_homs(t, t2))
            sq1, sq2 = base.pullback(t, u), base.pullback(t2, u)
            n2 = len(base.slice_homs(sq1.to_src_g, sq2.to_src_g))
            if n1 != n2:
                return False
    return True


# -- finite-space engine and topological oracles -------------------------------

def open_map_oracle(u: CtsMap):
    """Image of every open is open (direct check on specialization posets)."""
    X, Z = u.dom, u.cod
    z_pts = list(Z.points)
    for A in X.up_masks():
        img = 0
        for i, x in enumerate(X.points):
            if (A >> i) & 1:
                img |= 1 << z_pts.index(u(x))
        if Z.up_closure(img) != img:
            return False
    return True


def closed_map_check(u: CtsMap):
    """Image of every point closure is closed (= closed map, finite case)."""
    X, Z = u.dom, u.cod
    z_pts = list(Z.points)
    for i, x in enumerate(X.points):
        down = X.down_closure(1 << i)
        img = 0
        for j, x2 in enumerate(X.points):
            if (down >> j) & 1:
                img |= 1 << z_pts.index(u(x2))
        if Z.down_closure(img) != img:
            return False
    return True


def universally_closed_oracle(base, scope, u: CtsMap):
    """Closed after every scope base change (independent of the mates)."""
    if not closed_map_check(u):
        return False
    for v in scope.arrows_into(u.cod):
        sq = base.pullback(u, v)
        if not closed_map_check(sq.to_src_g):
            return False
    return True


from functools import lru_cache


@lru_cache(maxsize=None)
def _up_masks(S: SpaceObj):
    return S.up_masks()


@lru_cache(maxsize=None)
def _space_pre_table(u: CtsMap):
    """Preimage masks over dom for every subset mask of cod (<= 2^|cod|)."""
    d = u.as_dict()
    dom_pts = list(u.dom.points)
    cod_pts = list(u.cod.points)
    idx = [cod_pts.index(d[x]) for x in dom_pts]
    table = []
    for B in range(1 << len(cod_pts)):
        m = 0
        for i, j in enumerate(idx):
            if (B >> j) & 1:
                m |= 1 << i
        table.append(m)
    return tuple(table)


def opens_least_image(space_cod: SpaceObj, opens_cod, pre, A):
    """Certified least open B of the codomain with A <= pre[B]."""
    meet = (1 << len(space_cod.points)) - 1
    found = False
    for B in opens_cod:
        if A & ~pre[B] == 0:
            meet &= B
            found = True
    if not found or A & ~pre[meet] != 0 or meet not in set(opens_cod):
        return None
    return meet


def opens_greatest_coimage(space_cod: SpaceObj, opens_cod, pre, A):
    """Certified greatest open B of the codomain with pre[B] <= A."""
    join = 0
    found = False
    for B in opens_cod:
        if pre[B] & ~A == 0:
            join |= B
            found = True
    if not found or pre[join] & ~A != 0 or join not in set(opens_cod):
        return None
    return join


def opens_bc_square(base, u: CtsMap, v: CtsMap, side):
    """Open-set mate over one square, certified scans on both routes."""
    both = _opens_square_both(base, u, v, side)
    return both


def _opens_square_both(base, u: CtsMap, v: CtsMap, side="both"):
    """One square, both mates; shares the corner setup between sides.

    side='left'/'right' returns (ok, witness); side='both' returns
    (left_ok, right_ok, witness)."""
    sq = base.pullback(u, v)
    vbar, ubar = sq.to_src_f, sq.to_src_g
    X, Z, W = u.dom, u.cod, v.dom
    opens_Z, opens_W = _up_masks(Z), _up_masks(W)
    opens_W_set = set(opens_W)
    pre_u = _space_pre_table(u)
    pre_v = _space_pre_table(v)
    pre_vbar = _space_pre_table(vbar)
    pre_ubar = {B: _space_mask_preimage(ubar, B) for B in opens_W}
    full_W = (1 << len(W.points)) - 1
    left_ok = right_ok = True
    wit = None
    for A in _up_masks(X):
        S = pre_vbar[A]
        if side in ("both", "left") and left_ok:
            meet, found = full_W, False
            for B in opens_W:
                if S & ~pre_ubar[B] == 0:
                    meet &= B
                    found = True
            lhs = meet if (found and meet in opens_W_set
                           and S & ~pre_ubar[meet] == 0) else None
            mid = opens_least_image(Z, opens_Z, pre_u, A)
            if lhs is None or mid is None or lhs != pre_v[mid]:
                left_ok = False
                wit = ("left", A)
        if side in ("both", "right") and right_ok:
            join, found = 0, False
            for B in opens_W:
                if pre_ubar[B] & ~S == 0:
                    join |= B
                    found = True
            rhs = join if (found and join in opens_W_set
                           and pre_ubar[join] & ~S == 0) else None
            mid = opens_greatest_coimage(Z, opens_Z, pre_u, A)
            if rhs is None or mid is None or pre_v[mid] != rhs:
                right_ok = False
                wit = wit or ("right", A)
        if not left_ok and not right_ok:
            break
    if side == "left":
        return left_ok, wit
    if side == "right":
        return right_ok, wit
    return left_ok, right_ok, wit


def _space_mask_preimage(f: CtsMap, mask_cod):
    cod_pts = list(f.cod.points)
    out = 0
    for i, x in enumerate(f.dom.points):
        if (mask_cod >> cod_pts.index(f(x))) & 1:
            out |= 1 << i
    return out


def pre_vbar_of_mask(vbar: CtsMap, A):
    return _space_mask_preimage(vbar, A)


def _opens_least_from_tables(W, opens_W, pre_tab, S):
    meet = (1 << len(W.points)) - 1
    found = False
    for B in opens_W:
        if S & ~pre_tab[B] == 0:
            meet &= B
            found = True
    if not found or S & ~pre_tab.get(meet, -1) != 0 or meet not in set(opens_W):
        return None
    return meet


def _opens_greatest_from_tables(W, opens_W, pre_tab, S):
    join = 0
    found = False
    for B in opens_W:
        if pre_tab[B] & ~S == 0:
            join |= B
            found = True
    if not found or join not in set(opens_W) or pre_tab[join] & ~S != 0:
        return None
    return join


def opens_classify(base, scope, u: CtsMap):
    """Smooth/proper verdicts for the open-set fibration over one map."""
    smooth = proper = True
    wit = None
    for v in scope.arrows_into(u.cod):
        lok, rok, w = _opens_square_both(base, u, v)
        if not lok and smooth:
            smooth = False
            wit = wit or ("left", v, w)
        if not rok and proper:
            proper = False
            wit = wit or ("right", v, w)
        if not smooth and not proper:
            break
    return {"smooth": smooth, "proper": proper, "witness": wit}


def opens_pre_acyclic(u: CtsMap):
    """Preimage is a bijection of open lattices, order both ways."""
    pre = _space_pre_table(u)
    oZ, oX = _up_masks(u.cod), _up_masks(u.dom)
    imgs = [pre[B] for B in oZ]
    if sorted(imgs) != sorted(oX):
        return False
    for B in oZ:
        for B2 in oZ:
            if (B & B2 == B) != (pre[B] & pre[B2] == pre[B]):
                return False
    return True


def opens_acyclic(base, scope, u: CtsMap):
    if not opens_pre_acyclic(u):
        return False
    for v in scope.arrows_into(u.cod):
        sq = base.pullback(u, v)
        if not opens_pre_acyclic(sq.to_src_g):
            return False
    return True


def homeomorphism_oracle(base, u: CtsMap):
    """Bijective, monotone both ways (independent of the opens machinery)."""
    return base.is_iso(u)
