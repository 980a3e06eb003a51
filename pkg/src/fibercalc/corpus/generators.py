"""Generators for the example rows: universes, fibrations, calibrations.

Each generator returns validated engine objects (materialized categories,
indexed categories over lazy bases, calibrations, factorization systems)
ready for classification and for the independent row oracles.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from ..fincat import (FinCategory, FinFunctor, SizeCapExceeded,
                      product_category)
from ..fibred import IndexedCategory, Scope, make_calibration
from ..classify import ForgetfulMap
from .bases import (FinSetBase, FSetObj, FnArrow, FinSpaceBase,
                    SpaceObj, CtsMap)


@lru_cache(maxsize=None)
def finset_universe(M):
    """The skeletal category of sets of size <= M, fully materialized.

    Objects are the sizes 0..M as ints; arrows are value tuples.  Only
    sensible for M <= 4 (the table grows like M^M); larger ambients use
    FinSetBase instead.
    """
    if M > 4:
        raise SizeCapExceeded("materialized finite-set universe capped at 4")
    objects = list(range(M + 1))
    arrows, src, tgt = [], {}, {}
    for n in objects:
        for m in objects:
            for vals in itertools.product(range(m), repeat=n):
                a = ("fn", n, m, vals)
                arrows.append(a)
                src[a], tgt[a] = n, m
    ident = {n: ("fn", n, n, tuple(range(n))) for n in objects}
    comp = {}
    for f in arrows:
        _, n, m, fv = f
        for g in arrows:
            if g[1] != m:
                continue
            _, _, k, gv = g
            comp[(g, f)] = ("fn", n, k, tuple(gv[fv[i]] for i in range(n)))
    return FinCategory(f"FinSet<={M}", objects, arrows, src, tgt, ident, comp)


# -- the subset / power-set fibration -----------------------------------------

@lru_cache(maxsize=None)
def _mask_poset(n):
    """The inclusion order on subsets of an n-element set, masks as objects."""
    objs = list(range(1 << n))
    arrows, src, tgt, comp = [], {}, {}, {}
    for B in objs:
        A = B
        while True:
            arrows.append((A, B))
            src[(A, B)], tgt[(A, B)] = A, B
            if A == 0:
                break
            A = (A - 1) & B
    ident = {A: (A, A) for A in objs}
    for C in objs:
        B = C
        while True:
            A = B
            while True:
                comp[((B, C), (A, B))] = (A, C)
                if A == 0:
                    break
                A = (A - 1) & B
            if B == 0:
                break
            B = (B - 1) & C
    return FinCategory(f"2^{n}", objs, arrows, src, tgt, ident, comp)


class PowersetIndexed(IndexedCategory):
    """Subsets as an indexed category over a lazy finite-set base.

    The fiber at S is the inclusion poset of subsets of S (bitmasks over the
    sorted elements of S); transitions are preimage maps, which compose on
    the nose, so the indexed category is strict.
    """

    def __init__(self, base: FinSetBase):
        super().__init__(f"subsets[{base.name}]", base, strict=True)
        self._trans = {}

    def fiber(self, S):
        return _mask_poset(len(S))

    def mask_of(self, S, elems):
        order = list(S.elems)
        m = 0
        for e in elems:
            m |= 1 << order.index(e)
        return m

    def elems_of(self, S, mask):
        return [e for i, e in enumerate(S.elems) if (mask >> i) & 1]

    def transition(self, u: FnArrow):
        if u in self._trans:
            return self._trans[u]
        S, T = u.dom, u.cod
        s_elems, t_elems = list(S.elems), list(T.elems)
        idx = [t_elems.index(u(x)) for x in s_elems]
        fS, fT = self.fiber(S), self.fiber(T)

        def pre(maskT):
            m = 0
            for i, j in enumerate(idx):
                if (maskT >> j) & 1:
                    m |= 1 << i
            return m

        ob = {B: pre(B) for B in fT.objects}
        ar = {(A, B): (ob[A], ob[B]) for (A, B) in fT.arrows}
        F = FinFunctor(f"pre[{u!r}]", fT, fS, ob, ar, validate=False)
        self._trans[u] = F
        return F


def powerset(M, ambient=None):
    """The subset fibration over finite sets <= M inside a wider ambient."""
    amb = ambient if ambient is not None else M * M
    base = FinSetBase(amb)
    return PowersetIndexed(base), base, base.tier_scope(M)


def subset_forgetful(ps: PowersetIndexed) -> ForgetfulMap:
    """Subsets as monomorphisms: the inclusion into the universe."""
    base = ps.base

    def ob(X, mask):
        sub = FSetObj.of(ps.elems_of(X, mask))
        return FnArrow.of(sub, X, {e: e for e in sub})

    def ar(X, arrow):
        A, B = arrow
        subA = FSetObj.of(ps.elems_of(X, A))
        subB = FSetObj.of(ps.elems_of(X, B))
        return FnArrow.of(subA, subB, {e: e for e in subA})

    return ForgetfulMap(ps, ob, ar, name="sub")


# -- kappa-small families ------------------------------------------------------

def kappa_small(M, kappa, ambient=None):
    """Calibration of maps whose point fibers all have size < kappa."""
    amb = ambient if ambient is not None else M * M
    base = FinSetBase(amb)
    scope = base.tier_scope(M)

    def member(f: FnArrow):
        return all(len(f.fiber(y)) < kappa for y in f.cod)

    cal = make_calibration(base, member, scope=scope,
                           name=f"fibers<{kappa}")
    return cal, base, scope


class FamilyIndexed(IndexedCategory):
    """Families of sets with point sizes < kappa, indexed over finite sets.

    The fiber at S is the category of tuples of sets (canonical initial
    segments) indexed by the points of S, with fiberwise maps; transitions
    reindex, which is strictly functorial.  Materialization is only
    sensible for small S and kappa.
    """

    def __init__(self, base: FinSetBase, kappa, cap=4000):
        super().__init__(f"fam<{kappa}[{base.name}]", base, strict=True)
        self.kappa = kappa
        self.cap = cap
        self._fibers = {}

    def fiber(self, S):
        if S in self._fibers:
            return self._fibers[S]
        pts = list(S.elems)
        sizes = range(self.kappa)
        objs = [tuple(zip(pts, combo))
                for combo in itertools.product(sizes, repeat=len(pts))]
        if len(objs) > self.cap:
            raise SizeCapExceeded("family fiber too large")
        arrows, src, tgt, ident, comp = [], {}, {}, {}, {}
        for F in objs:
            for G in objs:
                szF, szG = dict(F), dict(G)
                per_pt = []
                ok = True
                for p in pts:
                    maps = list(itertools.product(range(szG[p]),
                                                  repeat=szF[p]))
                    if not maps:
                        ok = False
                        break
                    per_pt.append(maps)
                if not ok and pts:
                    continue
                for combo in itertools.product(*per_pt) if pts else [()]:
                    t = (F, G, tuple(zip(pts, combo)))
                    arrows.append(t)
                    src[t], tgt[t] = F, G
        for F in objs:
            szF = dict(F)
            ident[F] = (F, F, tuple((p, tuple(range(szF[p]))) for p in pts))
        for t1 in arrows:
            d1 = dict(t1[2])
            for t2 in arrows:
                if t2[0] != t1[1]:
                    continue
                d2 = dict(t2[2])
                fused = tuple((p, tuple(d2[p][v] for v in d1[p])) for p in pts)
                comp[(t2, t1)] = (t1[0], t2[1], fused)
        cat = FinCategory(f"fam({S!r})", objs, arrows, src, tgt, ident, comp)
        self._fibers[S] = cat
        return cat

    def transition(self, u: FnArrow):
        S, T = u.dom, u.cod
        fS, fT = self.fiber(S), self.fiber(T)
        pts_s = list(S.elems)
        ud = u.as_dict()

        def reix_obj(F):
            d = dict(F)
            return tuple((p, d[ud[p]]) for p in pts_s)

        def reix_arr(t):
            F, G, fam = t
            d = dict(fam)
            return (reix_obj(F), reix_obj(G),
                    tuple((p, d[ud[p]]) for p in pts_s))

        ob = {F: reix_obj(F) for F in fT.objects}
        ar = {t: reix_arr(t) for t in fT.arrows}
        return FinFunctor(f"reix[{u!r}]", fT, fS, ob, ar, validate=False)


def represented_indexed(C: FinCategory, base: FinSetBase, cap=2000):
    """The functor I |-> C^I represented by a small category C."""

    class _Rep(IndexedCategory):
        def __init__(self):
            super().__init__(f"rep[{C.name}]", base, strict=True)
            self._fibers = {}

        def fiber(self, S):
            if S not in self._fibers:
                n = len(S)
                if len(C.objects) ** max(n, 1) > cap:
                    raise SizeCapExceeded("represented fiber too large")
                self._fibers[S] = product_category([C] * n)
            return self._fibers[S]

        def transition(self, u: FnArrow):
            S, T = u.dom, u.cod
            fS, fT = self.fiber(S), self.fiber(T)
            t_elems = list(T.elems)
            pos = [t_elems.index(u(x)) for x in S.elems]
            ob = {F: tuple(F[j] for j in pos) for F in fT.objects}
            ar = {a: tuple(a[j] for j in pos) for a in fT.arrows}
            return FinFunctor(f"reix[{u!r}]", fT, fS, ob, ar, validate=False)

    return _Rep()


# -- (surjection, injection) factorization system ------------------------------

def epi_mono(M, ambient=None):
    """The image factorization system on finite sets <= M (lazy ambient)."""
    from ..classify import FactorizationSystem
    amb = ambient if ambient is not None else M * M
    base = FinSetBase(amb)
    scope = base.tier_scope(M)

    def factor(f: FnArrow):
        img = FSetObj.of(b for _, b in f.graph)
        l = FnArrow.of(f.dom, img, f.as_dict())
        r = FnArrow.of(img, f.cod, {e: e for e in img})
        return l, r

    return FactorizationSystem(base, lambda a: a.is_surjective(),
                               lambda a: a.is_injective(), factor,
                               scope=scope, name=f"(epi,mono)<= {M}"), base, scope


# -- finite spaces --------------------------------------------------------------

def sierpinski():
    """Two points, one open point above a closed one."""
    return SpaceObj.of([0, 1], [(0, 1)])


class OpensIndexed(IndexedCategory):
    """Open sets (up-sets of the specialization order) as an indexed poset."""

    def __init__(self, base: FinSpaceBase, fiber_cap=4096):
        super().__init__(f"opens[{base.name}]", base, strict=True)
        self.fiber_cap = fiber_cap
        self._fibers = {}
        self._trans = {}

    def fiber(self, S: SpaceObj):
        if S in self._fibers:
            self._fibers[S] = self._fibers[S]
        else:
            opens = S.up_masks()
            if len(opens) > self.fiber_cap:
                raise SizeCapExceeded("opens fiber too large")
            objs = list(opens)
            arrows, src, tgt, comp = [], {}, {}, {}
            for A in objs:
                for B in objs:
                    if A & B == A:
                        arrows.append((A, B))
                        src[(A, B)], tgt[(A, B)] = A, B
            ident = {A: (A, A) for A in objs}
            for (A, B) in arrows:
                for (B2, C) in arrows:
                    if B2 == B:
                        comp[((B, C), (A, B))] = (A, C)
            self._fibers[S] = FinCategory(f"O({S!r})", objs, arrows, src, tgt,
                                          ident, comp)
        return self._fibers[S]

    def transition(self, u: CtsMap):
        if u in self._trans:
            return self._trans[u]
        S, T = u.dom, u.cod
        fS, fT = self.fiber(S), self.fiber(T)
        t_pts = list(T.points)
        idx = [t_pts.index(u(x)) for x in S.points]

        def pre(maskT):
            m = 0
            for i, j in enumerate(idx):
                if (maskT >> j) & 1:
                    m |= 1 << i
            return m

        ob = {B: pre(B) for B in fT.objects}
        ar = {(A, B): (ob[A], ob[B]) for (A, B) in fT.arrows}
        F = FinFunctor(f"pre[{u!r}]", fT, fS, ob, ar, validate=False)
        self._trans[u] = F
        return F


def finite_space_setup(max_points, ambient=None):
    """Opens fibration over T0 spaces of bounded size, with its tier scope."""
    from .bases import spaces_upto
    amb = ambient if ambient is not None else max_points * max_points
    base = FinSpaceBase(amb)
    tier = spaces_upto(max_points)
    into_cache = {}

    def into(Z):
        if Z not in into_cache:
            out = []
            for W in tier:
                out.extend(base.hom(W, Z))
            into_cache[Z] = tuple(out)
        return into_cache[Z]

    def all_arrows():
        out = []
        for W in tier:
            for Z in tier:
                out.extend(base.hom(W, Z))
        return out

    scope = Scope(f"maps between T0 spaces <= {max_points} pts "
                  f"(ambient {base.name})", into, all_arrows)
    return OpensIndexed(base), base, scope, tier


# -- example specification dispatcher -------------------------------------------

from dataclasses import dataclass, field as _field


@dataclass
class ExampleSpec:
    """A generator invocation with its parameters and expected-row pointer.

    ``ambient`` must be at least ``bound**2`` whenever the generator
    classifies maps (so the pullbacks of classified maps exist in the
    ambient); validated on construction.
    """
    generator: str
    bound: int = None
    ambient: int = None
    kappa: int = None
    space: object = None
    expected_row: str = None
    params: dict = _field(default_factory=dict)

    def __post_init__(self):
        needs_pullbacks = self.generator in ("powerset", "kappa_small",
                                             "epi_mono", "finset_universe")
        if needs_pullbacks and self.bound is not None and \
                self.ambient is not None and self.ambient < self.bound ** 2:
            raise SizeCapExceeded(
                f"ambient {self.ambient} < bound^2 = {self.bound ** 2}")


def build_example(spec: ExampleSpec):
    """Materialize the example a spec describes; returns (object, metadata)."""
    g = spec.generator
    meta = {"generator": g, "expected_row": spec.expected_row}
    if g == "finset_universe":
        cat = finset_universe(spec.bound)
        return cat, {**meta, "objects": len(cat.objects),
                     "arrows": len(cat.arrows)}
    if g == "powerset":
        ps, base, scope = powerset(spec.bound, spec.ambient)
        return ps, {**meta, "ambient": base.name, "scope": scope.name}
    if g == "kappa_small":
        cal, base, scope = kappa_small(spec.bound, spec.kappa, spec.ambient)
        return cal, {**meta, "ambient": base.name, "pointed": cal.pointed,
                     "regular": cal.regular}
    if g == "epi_mono":
        FS, base, scope = epi_mono(spec.bound, spec.ambient)
        return FS, {**meta, "ambient": base.name}
    if g == "finite_space":
        space = spec.space if spec.space is not None else sierpinski()
        amb = spec.ambient or max(len(space), 1) ** 2
        base = FinSpaceBase(amb)
        return OpensIndexed(base), {**meta, "space": repr(space),
                                    "opens": len(space.up_masks())}
    if g == "dof_universe":
        from .dofrow import probe_cat_base, DofIndexed
        base = probe_cat_base()
        bound = spec.bound if spec.bound is not None else 2
        return DofIndexed(base, bound), {**meta, "probes": len(base.objects)}
    raise SizeCapExceeded(f"unknown generator {g!r}")
