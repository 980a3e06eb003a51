"""Classification of base arrows against an indexed category.

Verdicts (left/right Beck-Chevalley, smooth, proper, pre-acyclic, acyclic,
localic, strict variants) are exact relative to a declared Scope; every
report carries the ambient and scope identity.  Mates are computed pointwise
from per-object universal arrows, so fibers never need total adjoint
functors unless the caller asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (FinCatError, FinCategory, NoPullback,
                     is_equivalence)
from .adjunction import universal_arrow, find_adjoint, NoAdjoint
from .fibred import (IndexedCategory, Scope, NotStrict, slice_category,
                     pullback_functor, Calibration, fam_construction, delta,
                     NotPointed)


class MissingPullback(FinCatError):
    pass


class MissingAdjoint(FinCatError):
    pass


class NotSmooth(FinCatError):
    pass


class NotProper(FinCatError):
    pass


class NotExponentiable(FinCatError):
    pass


class NotOrthogonal(FinCatError):
    pass


# -- pointwise mates over a base pullback square -----------------------------

def _theta(C: IndexedCategory, sq, z):
    """Component at z of the comparison  to_src_f* u* z -> to_src_g* v* z."""
    if C.strict:
        P_fiber = C.fiber(C.base.source(sq.to_src_f))
        obj = C.transition(sq.to_src_f).ob[C.transition(sq.f).ob[z]]
        return P_fiber.ident[obj]
    iso = C.square_iso(sq)
    if iso is None:
        raise NotStrict(f"{C.name} is not strict and provides no square iso")
    return iso[z]


def square_mate_component(C: IndexedCategory, sq, side, b):
    """The canonical Beck-Chevalley mate component at a fiber object.

    ``sq`` is a base pullback square over (u = sq.f: X -> Z, v = sq.g:
    W -> Z) with legs vbar = sq.to_src_f: P -> X and ubar = sq.to_src_g:
    P -> W.  For b in C(X):

      side='left':   ubar_!(vbar* b) -> v*(u_! b)      in C(W)
      side='right':  v*(u_* b) -> ubar_*(vbar* b)      in C(W)

    Returns (component arrow, source object, target object); raises
    MissingAdjoint when a pointwise adjoint does not exist.
    """
    base = C.base
    u, v = sq.f, sq.g
    vbar, ubar = sq.to_src_f, sq.to_src_g
    ustar = C.transition(u)
    vbarstar = C.transition(vbar)
    ubarstar = C.transition(ubar)
    vstar = C.transition(v)
    FP = C.fiber(base.source(vbar))
    FW = C.fiber(base.source(v))
    if side == "left":
        ua = universal_arrow(ustar, b, "left")
        if ua is None:
            raise MissingAdjoint(f"u_! missing at {b!r} along {u!r}")
        ub, eta = ua                      # eta: b -> u* u_! b  in C(X)
        pb = vbarstar.ar[eta]             # vbar* b -> vbar* u* u_! b  in C(P)
        th = _theta(C, sq, ub)            # vbar* u* (u_!b) -> ubar* v* (u_!b)
        phi = FP.comp[(th, pb)]           # vbar* b -> ubar*(v* u_! b)
        ua2 = universal_arrow(ubarstar, vbarstar.ob[b], "left")
        if ua2 is None:
            raise MissingAdjoint(f"ubar_! missing at {b!r} along {ubar!r}")
        ub2, eta2 = ua2                   # eta2: vbar* b -> ubar* ub2
        tgt = vstar.ob[ub]
        cands = [psi for psi in FW.hom(ub2, tgt)
                 if FP.comp[(ubarstar.ar[psi], eta2)] == phi]
        return cands[0], ub2, tgt
    if side == "right":
        ua = universal_arrow(ustar, b, "right")
        if ua is None:
            raise MissingAdjoint(f"u_* missing at {b!r} along {u!r}")
        ub, eps = ua                      # eps: u* u_* b -> b  in C(X)
        pb = vbarstar.ar[eps]             # vbar* u* u_* b -> vbar* b
        th = _theta(C, sq, ub)            # vbar* u* (u_*b) -> ubar* v* (u_*b)
        th_inv = FP.inverse(th)
        phi = FP.comp[(pb, th_inv)]       # ubar*(v* u_* b) -> vbar* b
        ua2 = universal_arrow(ubarstar, vbarstar.ob[b], "right")
        if ua2 is None:
            raise MissingAdjoint(f"ubar_* missing at {b!r} along {ubar!r}")
        ub2, eps2 = ua2                   # eps2: ubar* ub2 -> vbar* b
        src = vstar.ob[ub]
        cands = [psi for psi in FW.hom(src, ub2)
                 if FP.comp[(eps2, ubarstar.ar[psi])] == phi]
        return cands[0], src, ub2
    raise ValueError(f"side {side!r}")


@dataclass
class BCReport:
    """Aggregate Beck-Chevalley verdict for one arrow and one side."""
    arrow: object
    side: str
    holds: bool
    squares_checked: int
    scope: str
    witness: object = None      # (v, kind, detail) for the first failure

    def __bool__(self):
        return self.holds


def beck_chevalley(C: IndexedCategory, u, side, scope: Scope = None):
    """Check the mate over every scope square on u; first failure reported.

    A missing base pullback raises MissingPullback (precondition violation);
    a missing pointwise adjoint or a non-invertible component makes the
    verdict False with a witness, since the condition asks for adjoints.
    """
    scope = scope or Scope.all_of(C.base)
    base = C.base
    Z = base.target(u)
    FX = C.fiber(base.source(u))
    n = 0
    for v in scope.arrows_into(Z):
        try:
            sq = base.pullback(u, v)
            n += 1
            FW = C.fiber(base.source(v))
            for b in FX.objects:
                try:
                    comp, _, _ = square_mate_component(C, sq, side, b)
                except MissingAdjoint as e:
                    return BCReport(u, side, False, n, scope.name,
                                    witness=(v, "missing_adjoint", str(e)))
                if not FW.is_iso(comp):
                    return BCReport(u, side, False, n, scope.name,
                                    witness=(v, "mate_not_invertible", b))
        except NoPullback as e:
            raise MissingPullback(
                f"no pullback of {u!r} along {v!r}: {e}") from None
    return BCReport(u, side, True, n, scope.name)


# -- the full classification -------------------------------------------------

@dataclass
class MapClassification:
    """Per-arrow verdicts with witnesses, exact in the declared ambient."""
    arrow: object
    base: str
    scope: str
    mode: str
    left_bc: bool = None
    right_bc: bool = None
    smooth: bool = None
    proper: bool = None
    pre_acyclic: bool = None
    acyclic: bool = None
    localic: bool = None
    strict_smooth: bool = None
    strict_proper: bool = None
    witnesses: dict = field(default_factory=dict)

    def implication_violations(self):
        out = []
        pairs = [("smooth", "left_bc"), ("proper", "right_bc"),
                 ("acyclic", "pre_acyclic"), ("acyclic", "smooth"),
                 ("acyclic", "proper"), ("strict_smooth", "smooth"),
                 ("strict_proper", "proper")]
        d = self.__dict__
        for a, b in pairs:
            if d[a] is True and d[b] is False:
                out.append(f"{a} does not imply {b} at {self.arrow!r}")
        return out


class Classifier:
    """Classification session: one indexed category, one scope, memoized.

    mode='nested' checks Beck-Chevalley for every base change of u (the
    literal stable reading); mode='single' checks every scope square over u
    itself, which agrees with nested for composition-closed scopes by the
    mate-pasting law (property-tested separately, and asserted equal to
    nested at small scale in the test suite).
    """

    def __init__(self, C: IndexedCategory, scope: Scope = None, mode="nested"):
        self.C = C
        self.scope = scope or Scope.all_of(C.base)
        if mode not in ("nested", "single"):
            raise ValueError(f"mode {mode!r}")
        self.mode = mode
        self._bc = {}
        self._pre = {}
        self._acyclic_set = None

    def bc(self, u, side) -> BCReport:
        key = (u, side)
        if key not in self._bc:
            self._bc[key] = beck_chevalley(self.C, u, side, self.scope)
        return self._bc[key]

    def _base_changes(self, u):
        base = self.C.base
        for v in self.scope.arrows_into(base.target(u)):
            try:
                yield v, base.pullback(u, v)
            except NoPullback:
                raise MissingPullback(f"no pullback of {u!r} along {v!r}") from None

    def stable_bc(self, u, side):
        """(holds, witness): BC for u and, in nested mode, every base change."""
        rep = self.bc(u, side)
        if not rep.holds:
            return False, rep.witness
        if self.mode == "nested":
            for v, sq in self._base_changes(u):
                rep2 = self.bc(sq.to_src_g, side)
                if not rep2.holds:
                    return False, ("base_change", v, rep2.witness)
        return True, None

    def pre_acyclic(self, u):
        if u not in self._pre:
            self._pre[u] = _fiber_equivalence(self.C, u)
        return self._pre[u]

    def acyclic(self, u):
        if not self.pre_acyclic(u):
            return False, ("self", None)
        for v, sq in self._base_changes(u):
            if not self.pre_acyclic(sq.to_src_g):
                return False, ("base_change", v)
        return True, None

    def acyclic_set(self):
        """Scope arrows classified acyclic; memoized before localic queries."""
        if self._acyclic_set is None:
            acc = []
            for a in self.scope.all_arrows():
                ok, _ = self.acyclic(a)
                if ok:
                    acc.append(a)
            self._acyclic_set = tuple(acc)
        return self._acyclic_set

    def localic(self, u):
        """Unique right lifting of u against every acyclic scope arrow."""
        base = self.C.base
        X, Z = base.source(u), base.target(u)
        for a in self.acyclic_set():
            A, B = base.source(a), base.target(a)
            for f in base.hom(A, X):
                uf = base.compose(u, f)
                for g in base.hom(B, Z):
                    if base.compose(g, a) != uf:
                        continue
                    fills = [d for d in base.hom(B, X)
                             if base.compose(d, a) == f and base.compose(u, d) == g]
                    if len(fills) != 1:
                        return False, (a, f, g, len(fills))
        return True, None

    def classify(self, u, with_localic=True) -> MapClassification:
        C = self.C
        r = MapClassification(arrow=u, base=getattr(C.base, "name", "base"),
                              scope=self.scope.name, mode=self.mode)
        lb = self.bc(u, "left")
        rb = self.bc(u, "right")
        r.left_bc, r.right_bc = lb.holds, rb.holds
        if not lb.holds:
            r.witnesses["left_bc"] = lb.witness
        if not rb.holds:
            r.witnesses["right_bc"] = rb.witness
        sm, w = self.stable_bc(u, "left")
        r.smooth = sm
        if w:
            r.witnesses["smooth"] = w
        pr, w = self.stable_bc(u, "right")
        r.proper = pr
        if w:
            r.witnesses["proper"] = w
        r.pre_acyclic = self.pre_acyclic(u)
        ac, w = self.acyclic(u)
        r.acyclic = ac
        if w:
            r.witnesses["acyclic"] = w
        if with_localic:
            lo, w = self.localic(u)
            r.localic = lo
            if w:
                r.witnesses["localic"] = w
        bad = r.implication_violations()
        if bad:
            raise FinCatError(f"classification implication lattice violated: {bad}")
        return r


def classify_map(C: IndexedCategory, u, scope: Scope = None, mode="nested",
                 with_localic=True) -> MapClassification:
    """One-shot classification of a single arrow (see Classifier)."""
    return Classifier(C, scope, mode).classify(u, with_localic=with_localic)


def _fiber_equivalence(C: IndexedCategory, u):
    """is_equivalence(u*) with a fast path for skeletal posetal fibers."""
    base = C.base
    F = C.transition(u)
    dom, cod = F.dom, F.cod
    if dom.is_posetal() and cod.is_posetal() and \
            _skeletal(dom) and _skeletal(cod):
        if len(dom.objects) != len(cod.objects):
            return False
        if len(set(F.ob.values())) != len(dom.objects):
            return False
        for a in dom.objects:
            for b in dom.objects:
                if bool(dom.hom(a, b)) != bool(cod.hom(F.ob[a], F.ob[b])):
                    return False
        return True
    return bool(is_equivalence(F))


def _skeletal(cat: FinCategory):
    return all(cat.is_identity(a) or not cat.is_iso(a) for a in cat.arrows)


# -- strict smoothness / properness ------------------------------------------

class ForgetfulMap:
    """A fiberwise functor from C to the universe of its base.

    ``at(X)`` gives U_X: C(X) -> slice-like data; here we only require the
    underlying base arrow of each fiber object and fiber arrow, which is all
    the strict mates need.  ``ob(X, x)`` is the base arrow U_X(x) into X;
    ``ar(X, f)`` is the base arrow underlying U_X(f).
    """

    def __init__(self, C: IndexedCategory, ob, ar, name="U"):
        self.C = C
        self.name = name
        self._ob = ob
        self._ar = ar

    def ob(self, X, x):
        return self._ob(X, x)

    def ar(self, X, f):
        return self._ar(X, f)

    def check_naturality(self, arrows):
        """U_X(f* x) == f*_B(U_Y x) on the nose, for the given base arrows."""
        C, base = self.C, self.C.base
        for f in arrows:
            X, Y = base.source(f), base.target(f)
            fstar = C.transition(f)
            for y in C.fiber(Y).objects:
                lhs = self.ob(X, fstar.ob[y])
                sq = base.pullback(self.ob(Y, y), f)
                if lhs != sq.to_src_g:
                    raise NotStrict(
                        f"forgetful map not strictly natural at {f!r}, {y!r}")
        return True


def strict_check(C: IndexedCategory, forget: ForgetfulMap, u, side,
                 scope: Scope = None, *, certify_products=True,
                 classification: MapClassification = None):
    """Strictness of a smooth (proper) map against the universe.

    side='smooth': invertibility of the mate comparing the fiberwise left
    adjoint with composition in the base, at every fiber object:
        compose_u(U_X x) -> U_Y(u_! x)
    side='proper': exponentiability of u (pointwise dependent products with
    certificates) plus invertibility of the dual mate
        U_Y(u_* x) -> dependent_product_u(U_X x).
    Returns (verdict, witness).  Raises NotSmooth/NotProper when the stated
    precondition is violated and a classification is supplied.
    """
    base = C.base
    X, Y = base.source(u), base.target(u)
    ustar = C.transition(u)
    FX, FY = C.fiber(X), C.fiber(Y)
    forget.check_naturality([u])
    if classification is not None:
        if side == "smooth" and classification.smooth is False:
            raise NotSmooth(f"{u!r} is not smooth")
        if side == "proper" and classification.proper is False:
            raise NotProper(f"{u!r} is not proper")
    if side == "smooth":
        for x in FX.objects:
            ua = universal_arrow(ustar, x, "left")
            if ua is None:
                raise MissingAdjoint(f"u_! missing at {x!r} along {u!r}")
            ux, eta = ua
            # mate underlying arrow: src U_X(x) -> src U_Y(u_! x)
            t = forget.ob(Y, ux)
            sq = base.pullback(t, u)          # u*_B U_Y(u_! x)
            m_phi = forget.ar(X, eta)         # src U_X x -> apex, over X
            w = base.compose(sq.to_src_f, m_phi)
            lhs = base.compose(u, forget.ob(X, x))
            if base.compose(t, w) != lhs or not base.is_iso(w):
                return False, (x, w)
        return True, None
    if side == "proper":
        dp = getattr(base, "dependent_product", None)
        competitors = None
        if certify_products and (scope is not None or dp is None):
            competitors = (scope.arrows_into(Y) if scope is not None
                           else base.hom_into(Y))
        for x in FX.objects:
            ua = universal_arrow(ustar, x, "right")
            if ua is None:
                raise MissingAdjoint(f"u_* missing at {x!r} along {u!r}")
            ux, eps = ua
            t = forget.ob(X, x)
            if dp is not None:
                prod = dp(u, t)
                if prod is None:
                    raise NotExponentiable(f"{u!r} has no certified product at {t!r}")
                pi, ev = prod
                if competitors is not None and \
                        not _is_terminal_product(base, u, t, pi, ev, competitors):
                    raise NotExponentiable(
                        f"product at {t!r} fails terminality certification")
            else:
                prod = _dependent_product_search(base, u, t, scope)
                if prod is None:
                    raise NotExponentiable(f"{u!r}: no dependent product at {t!r}")
                pi, ev = prod
            # mate underlying arrow: src U_Y(u_* x) -> src(pi)
            s = forget.ob(Y, ux)
            w = _induced_section_map(base, u, t, pi, ev, s, forget.ar(X, eps))
            if w is None or not base.is_iso(w):
                return False, (x, w)
        return True, None
    raise ValueError(f"side {side!r}")


def slice_homs(base, a, b):
    """Maps src a -> src b commuting over the shared target."""
    fast = getattr(base, "slice_homs", None)
    if fast is not None:
        return fast(a, b)
    return tuple(m for m in base.hom(base.source(a), base.source(b))
                 if base.compose(b, m) == a)


def _dependent_product_search(base, u, t, scope):
    """Right-adjoint value of pullback-along-u at t, with counit, by search."""
    X, Y = base.source(u), base.target(u)
    competitors = scope.arrows_into(Y) if scope else base.hom_into(Y)
    for cand in competitors:
        sq = base.pullback(cand, u)
        for ev in slice_homs(base, sq.to_src_g, t):
            if _is_terminal_product(base, u, t, cand, ev, competitors):
                return cand, ev
    return None


def _is_terminal_product(base, u, t, pi, ev, competitors):
    """(pi, ev) is terminal among (s, psi: u*s -> t over X), exhaustively.

    ``competitors`` enumerates the slice objects over target(u) quantified
    against (the declared scope tier for lazy ambients)."""
    sq_pi = base.pullback(pi, u)
    for s in competitors:
        sq_s = base.pullback(s, u)
        for psi in slice_homs(base, sq_s.to_src_g, t):
            chis = []
            for chi in slice_homs(base, s, pi):
                w = _induced_pullback_map(base, u, s, pi, chi, sq_s, sq_pi)
                if w is not None and base.compose(ev, w) == psi:
                    chis.append(chi)
            if len(chis) != 1:
                return False
    return True


def _induced_pullback_map(base, u, s, t, m, sq_s, sq_t):
    """u*(m): apex of u*s -> apex of u*t, by the universal property."""
    cands = [w for w in slice_homs(base, sq_s.to_src_g, sq_t.to_src_g)
             if base.compose(sq_t.to_src_f, w) ==
             base.compose(m, sq_s.to_src_f)]
    return cands[0] if len(cands) == 1 else None


def _induced_section_map(base, u, t, pi, ev, s, m_eps):
    """The comparison s -> pi induced by eps through the product UP."""
    sq_s = base.pullback(s, u)
    sq_pi = base.pullback(pi, u)
    chis = []
    for chi in slice_homs(base, s, pi):
        w = _induced_pullback_map(base, u, s, pi, chi, sq_s, sq_pi)
        if w is not None and base.compose(ev, w) == m_eps:
            chis.append(chi)
    return chis[0] if len(chis) == 1 else None


def is_exponentiable(base, u, scope: Scope = None, cap=5000):
    """Pullback-along-u between slices admits a right adjoint.

    On pullback-complete materialized bases (posets, lattices) the slices
    are materialized and the adjoint is searched as a total functor.  On
    lazy ambients whose tier slices are not closed under pullback, the
    right adjoint is instead found pointwise at every scope slice object,
    each value carrying a terminality certificate against the scope.
    Returns (verdict, witness); the witness is the slice object whose comma
    has no terminal object.
    """
    scope = scope or Scope.all_of(base)
    X, Y = base.source(u), base.target(u)
    if getattr(base, "dependent_product", None) is not None or \
            not isinstance(base, FinCategory):
        competitors = scope.arrows_into(Y)
        for t in scope.arrows_into(X):
            dp = getattr(base, "dependent_product", None)
            if dp is not None:
                prod = dp(u, t)
                if prod is None:
                    return False, t
                pi, ev = prod
                if not _is_terminal_product(base, u, t, pi, ev, competitors):
                    return False, t
            else:
                if _dependent_product_search(base, u, t, scope) is None:
                    return False, t
        return True, None
    sY = slice_category(base, Y, scope.arrows_into(Y), cap=cap)
    sX = slice_category(base, X, scope.arrows_into(X), cap=cap)
    try:
        pf = pullback_functor(base, u, slice_tgt=sY, slice_src=sX)
    except NoPullback as e:
        raise MissingPullback(str(e)) from None
    adj = find_adjoint(pf, "right")
    if isinstance(adj, NoAdjoint):
        return False, adj.at_object
    return True, adj


# -- factorization systems ---------------------------------------------------

@dataclass
class FactorizationSystem:
    """An orthogonal factorization candidate (L, R) with a chosen factoring."""
    base: object
    left: object          # predicate or frozenset
    right: object
    factor: object        # arrow -> (l, r)
    scope: Scope = None
    name: str = "fs"

    def in_left(self, a):
        return self.left(a) if callable(self.left) else a in self.left

    def in_right(self, a):
        return self.right(a) if callable(self.right) else a in self.right


@dataclass
class FactorizationReport:
    is_ofs: bool
    is_modality: bool
    failures: list


def _unique_lift(base, l, r, f, g):
    """Diagonal count for the square (f, g): r . d? = g, d? . l = f."""
    A, B = base.source(l), base.target(l)
    S, T = base.source(r), base.target(r)
    return [d for d in base.hom(B, S)
            if base.compose(d, l) == f and base.compose(r, d) == g]


def check_factorization_system(FS: FactorizationSystem):
    """Certify orthogonality, closure, factoring, and modality-ness.

    is_modality: the left class is stable under base change along every
    scope arrow.  Failures are collected with witnesses; NotOrthogonal is
    raised only when the caller asked for a hard error via the report.
    """
    base = FS.base
    scope = FS.scope or Scope.all_of(base)
    arrows = scope.all_arrows()
    failures = []
    L = [a for a in arrows if FS.in_left(a)]
    R = [a for a in arrows if FS.in_right(a)]
    for a in arrows:
        l, r = FS.factor(a)
        if base.compose(r, l) != a:
            failures.append(("factor_compose", a))
        if not FS.in_left(l) or not FS.in_right(r):
            failures.append(("factor_classes", a))
    for a in arrows:
        if base.is_iso(a) and (not FS.in_left(a) or not FS.in_right(a)):
            failures.append(("iso_in_classes", a))
    for cls, name in ((L, "left"), (R, "right")):
        mem = FS.in_left if name == "left" else FS.in_right
        for a in cls:
            for b in cls:
                if base.target(a) == base.source(b) and not mem(base.compose(b, a)):
                    failures.append(("composition_closure", name, a, b))
    for l in L:
        for r in R:
            A, B = base.source(l), base.target(l)
            S, T = base.source(r), base.target(r)
            for f in base.hom(A, S):
                rf = base.compose(r, f)
                for g in base.hom(B, T):
                    if base.compose(g, l) != rf:
                        continue
                    if len(_unique_lift(base, l, r, f, g)) != 1:
                        failures.append(("orthogonality", l, r, f, g))
    is_ofs = not failures
    is_modality = is_ofs
    for l in L:
        for v in scope.arrows_into(base.target(l)):
            try:
                sq = base.pullback(l, v)
            except NoPullback:
                continue
            if not FS.in_left(sq.to_src_g):
                is_modality = False
                failures.append(("left_not_stable", l, v))
    return FactorizationReport(is_ofs, is_modality, failures)


def wfs_pullback_criterion(FS: FactorizationSystem, u, scope: Scope = None):
    """Every base change of pullback-along-u preserves the left class.

    For each base change ubar of u over the scope, and every left-class map
    l anchored over target(ubar), the induced map between pullback apexes
    must be in the left class again.  Returns (verdict, witness).
    """
    base = FS.base
    scope = scope or FS.scope or Scope.all_of(base)
    Z = base.target(u)
    squares = [(v, base.pullback(u, v)) for v in scope.arrows_into(Z)]
    for v, sq in squares:
        ubar = sq.to_src_g
        W = base.target(ubar)
        for b in scope.arrows_into(W):
            for l in scope.arrows_into(base.source(b)):
                if not FS.in_left(l):
                    continue
                a = base.compose(b, l)
                try:
                    sq_a = base.pullback(a, ubar)
                    sq_b = base.pullback(b, ubar)
                except NoPullback:
                    continue
                w = _induced_pullback_map(base, ubar, a, b, l, sq_a, sq_b)
                if w is None:
                    continue
                if not FS.in_left(w):
                    return False, (v, b, l)
    return True, None


# -- regularity <=> sums ------------------------------------------------------

@dataclass
class RegularSumsReport:
    regular: bool
    has_sums: bool
    agree: bool
    detail: object = None


def regular_iff_sums(U: Calibration, C: IndexedCategory = None,
                     mate_checks=True) -> RegularSumsReport:
    """Independently compute regularity and U-indexed-sum existence for U.

    Sums side: for every base object I, the comparison functor into the
    family fiber admits a left adjoint, and (when ``mate_checks``) the
    Beck-Chevalley mate over every scope arrow is invertible.  The report
    carries both verdicts; callers assert agreement.
    """
    if not U.pointed:
        raise NotPointed(f"{U.name} is not pointed")
    from .fibred import CalibrationIndexed
    C = C or CalibrationIndexed(U)
    fam = fam_construction(U, C)
    base = U.base
    regular = U.regular
    has_sums = True
    detail = None
    adjs = {}
    deltas = {}
    for I in base.objects:
        d = delta(U, C, I, fam)
        deltas[I] = d
        adj = find_adjoint(d, "left")
        if isinstance(adj, NoAdjoint):
            has_sums = False
            detail = ("no_left_adjoint", I, adj.at_object)
            break
        adjs[I] = adj
    if has_sums and mate_checks:
        from .adjunction import FunctorSquare, mate
        for v in U.scope.all_arrows():
            J, I = base.source(v), base.target(v)
            vC = C.transition(v)
            vF = fam.transition(v)
            # square: vF . delta_I = delta_J . vC  (strict by identity pullbacks)
            sq = FunctorSquare(deltas[I], vF, vC, deltas[J])
            rep = mate(sq, adjs[I], adjs[J], "left")
            if not rep.invertible:
                has_sums = False
                detail = ("bc_fails", v, rep.failing_component)
                break
    return RegularSumsReport(regular, has_sums, regular == has_sums, detail)
