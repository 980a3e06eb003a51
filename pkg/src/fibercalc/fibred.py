"""Indexed categories over a finite base, Grothendieck totals, calibrations.

A base is anything with the FinCategory arrow protocol (objects, identity,
compose, source/target, hom, is_iso, pullback); materialized FinCategory
instances satisfy it, and the corpus module adds lazily generated bases for
ambients too large to write down as tables.  Quantification over "all base
changes" is always relative to an explicit Scope so verdicts stay exact in
the declared ambient.
"""

from __future__ import annotations

from functools import lru_cache

from .fincat import (FinCategory, FinFunctor, FinCatError,
                     NoPullback, NotFunctorial, SizeCapExceeded,
                     identity_functor)


class NotStable(FinCatError):
    pass


class NotPointed(FinCatError):
    pass


class NotStrict(FinCatError):
    pass


DEFAULT_FIBER_CAP = 5000   # objects per constructed fiber


class Scope:
    """The family of base arrows 'every base change' ranges over.

    ``arrows_into(Z)`` enumerates the scope arrows with target Z;
    ``all_arrows()`` enumerates the whole family (used for acyclic sets and
    orthogonality).  Reports carry ``name`` so a verdict is never mistaken
    for a statement about an infinite completion.
    """

    def __init__(self, name, arrows_into, all_arrows):
        self.name = name
        self._into = arrows_into
        self._all = all_arrows

    def arrows_into(self, Z):
        return tuple(self._into(Z))

    def all_arrows(self):
        return tuple(self._all())

    @classmethod
    def all_of(cls, base):
        return cls(f"all arrows of {base.name}", base.hom_into, base.all_arrows)

    def __repr__(self):
        return f"Scope({self.name!r})"


class IndexedCategory:
    """A functor base^op -> Cat presented by fibers and transition functors.

    ``transition(u: X -> Y)`` is a functor fiber(Y) -> fiber(X).  ``strict``
    records whether transitions compose on the nose; cleavage-backed indexed
    categories (canonical-pullback slices) are only functorial up to the
    canonical iso, which ``square_iso`` exposes per pullback square.
    """

    def __init__(self, name, base, strict=True):
        self.name = name
        self.base = base
        self.strict = strict

    def fiber(self, obj) -> FinCategory:
        raise NotImplementedError

    def transition(self, arrow) -> FinFunctor:
        raise NotImplementedError

    def square_iso(self, square):
        """Components of the canonical iso (to_src_f)* . f* => (to_src_g)* . g*
        over a base pullback square; None means the square commutes strictly."""
        return None

    def __repr__(self):
        return f"IndexedCategory({self.name!r} over {self.base.name})"


class TabularIndexed(IndexedCategory):
    """Dict-backed indexed category; strict functoriality certified."""

    def __init__(self, name, base, fibers, transitions, *, validate=True):
        super().__init__(name, base, strict=True)
        self._fibers = dict(fibers)
        self._transitions = dict(transitions)
        if validate:
            self._validate()

    def fiber(self, obj):
        return self._fibers[obj]

    def transition(self, arrow):
        return self._transitions[arrow]

    def _validate(self):
        B = self.base
        for x in B.objects:
            if x not in self._fibers:
                raise NotFunctorial(f"no fiber at {x!r}")
        for a in B.all_arrows():
            t = self._transitions.get(a)
            if t is None:
                raise NotFunctorial(f"no transition at {a!r}")
            if t.dom != self._fibers[B.target(a)] or t.cod != self._fibers[B.source(a)]:
                raise NotFunctorial(f"transition at {a!r} has wrong fibers")
        for x in B.objects:
            if self._transitions[B.identity(x)] != identity_functor(self._fibers[x]):
                raise NotStrict(f"identity transition at {x!r} is not the identity")
        for f in B.all_arrows():
            for g in B.hom_from(B.target(f)):
                vu = self._transitions[B.compose(g, f)]
                lhs = _compose_ft(self._transitions[f], self._transitions[g])
                if vu != lhs:
                    raise NotStrict(f"(g.f)* != f*g* for f={f!r}, g={g!r}")


def _compose_ft(F, G):
    from .fincat import compose_functors
    return compose_functors(F, G)


def constant_indexed(base, fiber_cat, name=None):
    """The indexed category with a fixed fiber and identity transitions."""
    idf = identity_functor(fiber_cat)

    class _Const(IndexedCategory):
        def fiber(self, obj):
            return fiber_cat

        def transition(self, arrow):
            return idf

    return _Const(name or f"const[{fiber_cat.name}]", base)


# -- Grothendieck construction ---------------------------------------------

class Fibration:
    """A total category with projection and a chosen cartesian cleavage."""

    __slots__ = ("name", "total", "base", "projection", "cleavage")

    def __init__(self, name, total, base, projection, cleavage):
        self.name = name
        self.total = total
        self.base = base
        self.projection = projection
        self.cleavage = cleavage   # (object over Y, u: X->Y) -> total arrow

    def lift(self, obj, u):
        return self.cleavage[(obj, u)]

    def __repr__(self):
        return f"Fibration({self.name!r}: {self.total.name} -> {self.base.name})"


def grothendieck(X: IndexedCategory, *, certify=True) -> Fibration:
    """Total category of a strict indexed category, with canonical cleavage.

    Objects are pairs (base object, fiber object); an arrow
    (b, x) -> (b2, x2) is a pair (u: b -> b2, xi: x -> u* x2).  Every chosen
    lift is checked cartesian when ``certify`` is set.
    """
    if not X.strict:
        raise NotStrict("grothendieck requires a strict indexed category")
    B = X.base
    objs, arrows, src, tgt, ident, comp = [], [], {}, {}, {}, {}
    for b in B.objects:
        for x in X.fiber(b).objects:
            objs.append((b, x))
    for b in B.objects:
        Fb = X.fiber(b)
        for b2 in B.objects:
            F2 = X.fiber(b2)
            for u in B.hom(b, b2):
                ustar = X.transition(u)
                for x in Fb.objects:
                    for x2 in F2.objects:
                        for xi in Fb.hom(x, ustar.ob[x2]):
                            a = ((b, x), (b2, x2), u, xi)
                            arrows.append(a)
                            src[a], tgt[a] = (b, x), (b2, x2)
    for (b, x) in objs:
        ident[(b, x)] = ((b, x), (b, x), B.identity(b), X.fiber(b).ident[x])
    for a1 in arrows:
        (b, x), (b2, x2), u, xi = a1
        Fb = X.fiber(b)
        ustar = X.transition(u)
        for a2 in arrows:
            if src[a2] != tgt[a1]:
                continue
            _, (b3, x3), v, zeta = a2
            vu = B.compose(v, u)
            fibpart = Fb.comp[(ustar.ar[zeta], xi)]
            comp[(a2, a1)] = ((b, x), (b3, x3), vu, fibpart)
    total = FinCategory(f"El({X.name})", objs, arrows, src, tgt, ident, comp)
    proj = FinFunctor(f"p_{X.name}", total, _as_fincat(B), {o: o[0] for o in objs},
                      {a: a[2] for a in arrows}, validate=False) \
        if isinstance(B, FinCategory) else None
    cleavage = {}
    for (b2, x2) in objs:
        for b in B.objects:
            for u in B.hom(b, b2):
                x = X.transition(u).ob[x2]
                lift = ((b, x), (b2, x2), u, X.fiber(b).ident[x])
                cleavage[((b2, x2), u)] = lift
    fib = Fibration(f"groth({X.name})", total, B, proj, cleavage)
    if certify:
        for key, lift in cleavage.items():
            if not _is_cartesian(fib, lift):
                raise NotFunctorial(f"chosen lift for {key!r} is not cartesian")
    return fib


def _as_fincat(B):
    return B


def _is_cartesian(fib: Fibration, m):
    """1-categorical cartesian universal property, checked exhaustively."""
    total, B = fib.total, fib.base
    (b, x), (b2, x2), u, _ = m
    for a in total.arrows:
        if total.tgt[a] != (b2, x2):
            continue
        (b0, _y), _, w, _ = a
        for g in B.hom(b0, b):
            if B.compose(u, g) != w:
                continue
            over_g = [h for h in total.hom(total.src[a], (b, x))
                      if h[2] == g and total.comp[(m, h)] == a]
            if len(over_g) != 1:
                return False
    return True


def fiber_of_total(fib: Fibration, b):
    """The fiber of a fibration at b as a full subcategory over id_b."""
    total, B = fib.total, fib.base
    idb = B.identity(b)
    objs = [o for o in total.objects if o[0] == b]
    arrows = [a for a in total.arrows
              if total.src[a] in objs and total.tgt[a] in objs and a[2] == idb]
    src = {a: total.src[a] for a in arrows}
    tgt = {a: total.tgt[a] for a in arrows}
    ident = {o: total.ident[o] for o in objs}
    comp = {(a2, a1): total.comp[(a2, a1)] for a1 in arrows for a2 in arrows
            if total.tgt[a1] == total.src[a2]}
    return FinCategory(f"{total.name}|{b}", objs, arrows, src, tgt, ident, comp,
                       validate=False)


def base_change(fib: Fibration, u) -> FinFunctor:
    """The functor between total-category fibers induced by the cleavage."""
    B = fib.base
    b, b2 = B.source(u), B.target(u)
    F2, F1 = fiber_of_total(fib, b2), fiber_of_total(fib, b)
    ob, ar = {}, {}
    for o in F2.objects:
        ob[o] = fib.total.src[fib.lift(o, u)]
    idb = B.identity(b)
    for a in F2.arrows:
        o, o2 = F2.src[a], F2.tgt[a]
        lift_o = fib.lift(o, u)
        lift_o2 = fib.lift(o2, u)
        composite = fib.total.comp[(a, lift_o)]
        # unique fill over id_b through the cartesian lift of o2
        cands = [h for h in fib.total.hom(ob[o], ob[o2])
                 if h[2] == idb and fib.total.comp[(lift_o2, h)] == composite]
        ar[a] = cands[0]
    return FinFunctor(f"bc[{u!r}]", F2, F1, ob, ar)


# -- calibrations -----------------------------------------------------------

class Calibration:
    """A base-change-stable class of base arrows, with pointed/regular flags."""

    __slots__ = ("name", "base", "scope", "_member", "pointed", "regular",
                 "members_frozen")

    def __init__(self, name, base, member, scope, pointed, regular,
                 members_frozen=None):
        self.name = name
        self.base = base
        self.scope = scope
        self._member = member
        self.pointed = pointed
        self.regular = regular
        self.members_frozen = members_frozen

    def __contains__(self, arrow):
        return self._member(arrow)

    def members_into(self, obj):
        return tuple(a for a in self.scope.arrows_into(obj) if self._member(a))

    def __repr__(self):
        return f"Calibration({self.name!r}, pointed={self.pointed}, regular={self.regular})"


def make_calibration(base, members, *, scope=None, name=None,
                     require_stable=True):
    """Validate an arrow class as a calibration over the given scope.

    ``members`` is a set of arrows or a predicate.  Stability: for every
    member m: U -> I and scope arrow v: W -> I, the canonical pullback of m
    along v (when it exists in the base) projects to a member again;
    otherwise NotStable reports the witness cospan.  Pointed: contains all
    scope isomorphisms.  Regular: pointed and closed under composition of
    scope members.
    """
    scope = scope or Scope.all_of(base)
    if callable(members):
        member = members
        frozen = None
    else:
        frozen = frozenset(members)
        member = frozen.__contains__
    all_arrows = scope.all_arrows()
    mem_arrows = [a for a in all_arrows if member(a)]
    if require_stable:
        for m in mem_arrows:
            I = base.target(m)
            for v in scope.arrows_into(I):
                try:
                    sq = base.pullback(m, v)
                except NoPullback:
                    continue
                if not member(sq.to_src_g):
                    raise NotStable(f"pullback of {m!r} along {v!r} leaves the class")
    pointed = all(member(a) for a in all_arrows if base.is_iso(a))
    regular = pointed
    if pointed:
        for m in mem_arrows:
            for m2 in mem_arrows:
                if base.target(m) == base.source(m2):
                    if not member(base.compose(m2, m)):
                        regular = False
                        break
            if not regular:
                break
    return Calibration(name or "calibration", base, member, scope, pointed,
                       regular, frozen)


def constant_calibration(base, scope=None):
    """Members are exactly the isomorphisms."""
    return make_calibration(base, base.is_iso, scope=scope, name="isos")


def universe_calibration(base, scope=None):
    """Members are all arrows (the universe)."""
    return make_calibration(base, lambda a: True, scope=scope, name="all")


# -- slices and the self-indexing -------------------------------------------

@lru_cache(maxsize=None)
def _slice_cached(base, X, arrows_key):
    return _build_slice(base, X, list(arrows_key))


def slice_category(base, X, arrows_into=None, cap=DEFAULT_FIBER_CAP):
    """Slice of the base over X; objects are the arrows into X.

    For materialized bases all arrows into X are used; lazily generated
    bases pass the enumeration explicitly (their tier).  Exceeding ``cap``
    objects raises SizeCapExceeded.
    """
    arrows = tuple(arrows_into if arrows_into is not None else base.hom_into(X))
    if len(arrows) > cap:
        raise SizeCapExceeded(f"slice over {X!r} has {len(arrows)} objects")
    try:
        return _slice_cached(base, X, arrows)
    except TypeError:
        return _build_slice(base, X, list(arrows))


def _build_slice(base, X, arrows):
    objs = list(arrows)
    arr, src, tgt, ident, comp = [], {}, {}, {}, {}
    for a in objs:
        for b in objs:
            for m in base.hom(base.source(a), base.source(b)):
                if base.compose(b, m) == a:
                    t = (m, a, b)
                    arr.append(t)
                    src[t], tgt[t] = a, b
    for a in objs:
        ident[a] = (base.identity(base.source(a)), a, a)
    for t1 in arr:
        for t2 in arr:
            if tgt[t1] == src[t2]:
                comp[(t2, t1)] = (base.compose(t2[0], t1[0]), src[t1], tgt[t2])
    name = getattr(base, "name", "B")
    return FinCategory(f"{name}/{X!r}", objs, arr, src, tgt, ident, comp,
                       validate=False)


def pullback_functor(base, u, slice_tgt=None, slice_src=None,
                     arrows_into_tgt=None, arrows_into_src=None):
    """u*: slice(Y) -> slice(X) along u: X -> Y via canonical pullbacks."""
    X, Y = base.source(u), base.target(u)
    sY = slice_tgt or slice_category(base, Y, arrows_into_tgt)
    sX = slice_src or slice_category(base, X, arrows_into_src)
    ob = {}
    legs = {}
    for b in sY.objects:
        sq = base.pullback(b, u)
        ob[b] = sq.to_src_g
        legs[b] = sq.to_src_f      # apex -> src(b)
        if sq.to_src_g not in set(sX.objects):
            raise NoPullback(f"pullback of {b!r} along {u!r} misses the slice tier")
    ar = {}
    for t in sY.arrows:
        m, a, b = t
        # induced arrow between apexes: unique base arrow commuting with legs
        Pa, Pb = base.source(ob[a]), base.source(ob[b])
        cands = [w for w in base.hom(Pa, Pb)
                 if base.compose(ob[b], w) == ob[a]
                 and base.compose(legs[b], w) == base.compose(m, legs[a])]
        ar[t] = (cands[0], ob[a], ob[b])
    return FinFunctor(f"pb[{u!r}]", sY, sX, ob, ar)


class SelfIndexing(IndexedCategory):
    """The universe: fiber(X) is the slice over X, transitions by pullback.

    Cleavage-backed (pseudo up to canonical iso) unless the base has unique
    pullbacks (posets), so ``strict`` is set accordingly by the caller.
    """

    def __init__(self, base, scope=None, strict=False, cap=DEFAULT_FIBER_CAP):
        super().__init__(f"universe[{base.name}]", base, strict=strict)
        self.scope = scope or Scope.all_of(base)
        self.cap = cap
        self._fibers = {}
        self._trans = {}

    def fiber(self, obj):
        if obj not in self._fibers:
            self._fibers[obj] = slice_category(
                self.base, obj, self.scope.arrows_into(obj), cap=self.cap)
        return self._fibers[obj]

    def transition(self, arrow):
        if arrow not in self._trans:
            X, Y = self.base.source(arrow), self.base.target(arrow)
            self._trans[arrow] = pullback_functor(
                self.base, arrow, slice_tgt=self.fiber(Y), slice_src=self.fiber(X))
        return self._trans[arrow]


class CalibrationIndexed(IndexedCategory):
    """A calibration as an indexed category over its own base.

    The fiber at I is the full subcategory of the slice over I spanned by
    the members; transitions restrict the canonical pullback functor, which
    lands in members again by stability.  Strict over posetal bases.
    """

    def __init__(self, U: Calibration, cap=DEFAULT_FIBER_CAP):
        posetal = getattr(U.base, "is_posetal", None)
        strict = bool(posetal()) if callable(posetal) else False
        super().__init__(f"cal[{U.name}]", U.base, strict=strict)
        self.U = U
        self.cap = cap
        self._fibers = {}
        self._trans = {}

    def fiber(self, I):
        if I not in self._fibers:
            self._fibers[I] = slice_category(
                self.base, I, self.U.members_into(I), cap=self.cap)
        return self._fibers[I]

    def transition(self, v):
        if v not in self._trans:
            J, I = self.base.source(v), self.base.target(v)
            self._trans[v] = pullback_functor(
                self.base, v, slice_tgt=self.fiber(I), slice_src=self.fiber(J))
        return self._trans[v]


# -- the family construction ------------------------------------------------

class FamIndexed(IndexedCategory):
    """Families indexed by a calibration: fiber at I is pairs
    (member u: U -> I, object of C over U)."""

    def __init__(self, U: Calibration, C: IndexedCategory, cap=DEFAULT_FIBER_CAP):
        super().__init__(f"Fam_{U.name}({C.name})", C.base, strict=False)
        if U.base is not C.base and U.base != C.base:
            raise NotFunctorial("calibration and indexed category bases differ")
        self.U = U
        self.C = C
        self.cap = cap
        self._fibers = {}

    def fiber(self, I):
        if I in self._fibers:
            return self._fibers[I]
        base, C = self.base, self.C
        objs = []
        for m in self.U.members_into(I):
            for x in C.fiber(base.source(m)).objects:
                objs.append((m, x))
        if len(objs) > self.cap:
            raise SizeCapExceeded(f"family fiber at {I!r} has {len(objs)} objects")
        arr, src, tgt, ident, comp = [], {}, {}, {}, {}
        for (m, x) in objs:
            U1 = base.source(m)
            for (m2, x2) in objs:
                U2 = base.source(m2)
                for h in base.hom(U1, U2):
                    if base.compose(m2, h) != m:
                        continue
                    hstar = C.transition(h)
                    for xi in C.fiber(U1).hom(x, hstar.ob[x2]):
                        t = ((m, x), (m2, x2), h, xi)
                        arr.append(t)
                        src[t], tgt[t] = (m, x), (m2, x2)
        for (m, x) in objs:
            U1 = base.source(m)
            ident[(m, x)] = ((m, x), (m, x), base.identity(U1),
                             C.fiber(U1).ident[x])
        for t1 in arr:
            (m, x), (mm, xm), h, xi = t1
            U1 = base.source(m)
            hstar = self.C.transition(h)
            for t2 in arr:
                if src[t2] != tgt[t1]:
                    continue
                _, (m3, x3), h2, xi2 = t2
                comp[(t2, t1)] = ((m, x), (m3, x3), base.compose(h2, h),
                                  C.fiber(U1).comp[(hstar.ar[xi2], xi)])
        cat = FinCategory(f"Fam({I!r})", objs, arr, src, tgt, ident, comp)
        self._fibers[I] = cat
        return cat

    def transition(self, v):
        """Reindex families along v: J -> I by the canonical pullback."""
        base, C = self.base, self.C
        J, I = base.source(v), base.target(v)
        FI, FJ = self.fiber(I), self.fiber(J)
        ob, data = {}, {}
        for (m, x) in FI.objects:
            sq = base.pullback(m, v)
            mbar = sq.to_src_g            # P -> J, a member by stability
            vbar = sq.to_src_f            # P -> U
            ob[(m, x)] = (mbar, C.transition(vbar).ob[x])
            data[(m, x)] = (mbar, vbar)
        ar = {}
        for t in FI.arrows:
            (m, x), (m2, x2), h, xi = t
            mbar, vbar = data[(m, x)]
            mbar2, vbar2 = data[(m2, x2)]
            P1, P2 = base.source(mbar), base.source(mbar2)
            cands = [w for w in base.hom(P1, P2)
                     if base.compose(mbar2, w) == mbar
                     and base.compose(vbar2, w) == base.compose(h, vbar)]
            hprime = cands[0]
            xi2 = C.transition(vbar).ar[xi]
            ar[t] = (ob[(m, x)], ob[(m2, x2)], hprime, xi2)
        return FinFunctor(f"Fam[{v!r}]", FI, FJ, ob, ar)


def fam_construction(U: Calibration, C: IndexedCategory, cap=DEFAULT_FIBER_CAP):
    return FamIndexed(U, C, cap=cap)


def delta(U: Calibration, C: IndexedCategory, I, fam: FamIndexed = None):
    """The fiberwise comparison functor C(I) -> Fam_U(C)(I), x |-> (id_I, x)."""
    if not U.pointed:
        raise NotPointed(f"{U.name} does not contain the isomorphisms")
    fam = fam or fam_construction(U, C)
    base = C.base
    idI = base.identity(I)
    FI = fam.fiber(I)
    CI = C.fiber(I)
    ob = {x: (idI, x) for x in CI.objects}
    ar = {}
    for f in CI.arrows:
        x, x2 = CI.src[f], CI.tgt[f]
        # id*(x2) = x2 since transitions at identities are identities
        ar[f] = ((idI, x), (idI, x2), idI, f)
    return FinFunctor(f"delta[{I!r}]", CI, FI, ob, ar)
