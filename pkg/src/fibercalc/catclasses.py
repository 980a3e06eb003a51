"""Functor-class analyzers: fibration conditions, Conduche, factorizations.

Everything is decided by finite enumeration on materialized categories:
unique-lift counting for discrete (op)fibrations, universal-property search
for (co)cartesian lifts, zigzag connectivity of lifted-factorization
categories for the Conduche condition, and comma connectivity for
initial/final functors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fincat import (FinCategory, FinFunctor, SetDiagram, NotFunctorial,
                     comma, cat_pullback, identity_functor,
                     set_limit_colimit, _okey)
from .adjunction import find_adjoint, NoAdjoint


@dataclass
class FunctorClassReport:
    """Flags for one functor, with witnesses for every failing flag."""
    functor: object
    discrete_opfib: bool = None
    discrete_fib: bool = None
    cart_fib: bool = None
    cocart_fib: bool = None
    conduche: bool = None
    initial: bool = None
    final: bool = None
    witnesses: dict = field(default_factory=dict)

    def implication_violations(self):
        out = []
        for a, b in (("discrete_opfib", "cocart_fib"), ("cocart_fib", "conduche"),
                     ("discrete_fib", "cart_fib"), ("cart_fib", "conduche")):
            if getattr(self, a) is True and getattr(self, b) is False:
                out.append((a, b))
        return out


def discrete_fibration_check(F: FinFunctor, variance):
    """Unique lifting of arrows out of (variance='co') / into each object."""
    C, D = F.dom, F.cod
    for x in C.objects:
        fx = F.ob[x]
        if variance == "co":
            for e in D.hom_from(fx):
                lifts = [m for m in C.hom_from(x) if F.ar[m] == e]
                if len(lifts) != 1:
                    return False, (x, e, len(lifts))
        elif variance == "contra":
            for e in D.hom_into(fx):
                lifts = [m for m in C.hom_into(x) if F.ar[m] == e]
                if len(lifts) != 1:
                    return False, (x, e, len(lifts))
        else:
            raise ValueError(f"variance {variance!r}")
    return True, None


def grothendieck_fibration_check(F: FinFunctor, variance):
    """Existence of a certified (co)cartesian lift for every (object, arrow)."""
    C, D = F.dom, F.cod
    for x in C.objects:
        fx = F.ob[x]
        if variance == "cocart":
            for e in D.hom_from(fx):
                if not any(_is_cocartesian_lift(F, m, x)
                           for m in C.hom_from(x) if F.ar[m] == e):
                    return False, (x, e)
        elif variance == "cart":
            for e in D.hom_into(fx):
                if not any(_is_cartesian_lift(F, m, x)
                           for m in C.hom_into(x) if F.ar[m] == e):
                    return False, (x, e)
        else:
            raise ValueError(f"variance {variance!r}")
    return True, None


def _is_cocartesian_lift(F, m, x):
    """m: x -> y over e is cocartesian: every m': x -> y' over g.e factors
    uniquely through m over g."""
    C, D = F.dom, F.cod
    y = C.tgt[m]
    e = F.ar[m]
    for m2 in C.hom_from(x):
        for g in D.hom(D.tgt[e], F.ob[C.tgt[m2]]):
            if D.comp[(g, e)] != F.ar[m2]:
                continue
            fills = [w for w in C.hom(y, C.tgt[m2])
                     if F.ar[w] == g and C.comp[(w, m)] == m2]
            if len(fills) != 1:
                return False
    return True


def _is_cartesian_lift(F, m, x):
    C, D = F.dom, F.cod
    y = C.src[m]
    e = F.ar[m]
    for m2 in C.hom_into(x):
        for g in D.hom(F.ob[C.src[m2]], D.src[e]):
            if D.comp[(e, g)] != F.ar[m2]:
                continue
            fills = [w for w in C.hom(C.src[m2], y)
                     if F.ar[w] == g and C.comp[(m, w)] == m2]
            if len(fills) != 1:
                return False
    return True


def is_conduche(F: FinFunctor):
    """Every factorization of every image arrow lifts, connectedly.

    For each arrow m and each binary factorization F(m) = h.g, the lifted
    factorizations (m = m2.m1 with F m1 = g, F m2 = h) must be nonempty and
    zigzag-connected through vertical cells (arrows w with F w an identity,
    w.m1 = m1', m2'.w = m2).  Witness: the failing (m, g, h).
    """
    C, D = F.dom, F.cod
    for m in C.arrows:
        fm = F.ar[m]
        for g in D.hom_from(D.src[fm]):
            for h in D.hom(D.tgt[g], D.tgt[fm]):
                if D.comp[(h, g)] != fm:
                    continue
                lifts = [(m1, m2)
                         for m1 in C.hom_from(C.src[m]) if F.ar[m1] == g
                         for m2 in C.hom(C.tgt[m1], C.tgt[m])
                         if F.ar[m2] == h and C.comp[(m2, m1)] == m]
                if not lifts:
                    return False, (m, g, h, "empty")
                mid = D.tgt[g]
                idmid = D.ident[mid]
                adj = {t: set() for t in lifts}
                for (m1, m2) in lifts:
                    for (n1, n2) in lifts:
                        for w in C.hom(C.tgt[m1], C.tgt[n1]):
                            if F.ar[w] == idmid and C.comp[(w, m1)] == n1 \
                                    and C.comp[(n2, w)] == m2:
                                adj[(m1, m2)].add((n1, n2))
                                adj[(n1, n2)].add((m1, m2))
                seen = {lifts[0]}
                stack = [lifts[0]]
                while stack:
                    t = stack.pop()
                    for t2 in adj[t]:
                        if t2 not in seen:
                            seen.add(t2)
                            stack.append(t2)
                if len(seen) != len(lifts):
                    return False, (m, g, h, "disconnected")
    return True, None


def initial_final_check(F: FinFunctor, polarity):
    """Comma nonemptiness + connectivity; initial uses F/d, final uses d/F."""
    C, D = F.dom, F.cod
    for d in D.objects:
        if polarity == "initial":
            objs = [(c, a) for c in C.objects for a in D.hom(F.ob[c], d)]

            def connected_edge(o1, o2):
                (c1, a1), (c2, a2) = o1, o2
                return any(D.comp[(a2, F.ar[p])] == a1 for p in C.hom(c1, c2))
        elif polarity == "final":
            objs = [(c, a) for c in C.objects for a in D.hom(d, F.ob[c])]

            def connected_edge(o1, o2):
                (c1, a1), (c2, a2) = o1, o2
                return any(D.comp[(F.ar[p], a1)] == a2 for p in C.hom(c1, c2))
        else:
            raise ValueError(f"polarity {polarity!r}")
        if not objs:
            return False, (d, "empty")
        adj = {o: set() for o in objs}
        for o1 in objs:
            for o2 in objs:
                if connected_edge(o1, o2):
                    adj[o1].add(o2)
                    adj[o2].add(o1)
        seen = {objs[0]}
        stack = [objs[0]]
        while stack:
            o = stack.pop()
            for o2 in adj[o]:
                if o2 not in seen:
                    seen.add(o2)
                    stack.append(o2)
        if len(seen) != len(objs):
            return False, (d, "disconnected")
    return True, None


def fully_faithful(F: FinFunctor):
    C, D = F.dom, F.cod
    for a in C.objects:
        for b in C.objects:
            images = [F.ar[f] for f in C.hom(a, b)]
            if len(set(images)) != len(images):
                return False, (a, b, "not faithful")
            if set(images) != set(D.hom(F.ob[a], F.ob[b])):
                return False, (a, b, "not full")
    return True, None


def analyze_functor(F: FinFunctor) -> FunctorClassReport:
    """All flags at once; the implication chain is asserted on the result."""
    r = FunctorClassReport(functor=F)
    r.discrete_opfib, w = discrete_fibration_check(F, "co")
    if w:
        r.witnesses["discrete_opfib"] = w
    r.discrete_fib, w = discrete_fibration_check(F, "contra")
    if w:
        r.witnesses["discrete_fib"] = w
    r.cocart_fib, w = grothendieck_fibration_check(F, "cocart")
    if w:
        r.witnesses["cocart_fib"] = w
    r.cart_fib, w = grothendieck_fibration_check(F, "cart")
    if w:
        r.witnesses["cart_fib"] = w
    r.conduche, w = is_conduche(F)
    if w:
        r.witnesses["conduche"] = w
    r.initial, w = initial_final_check(F, "initial")
    if w:
        r.witnesses["initial"] = w
    r.final, w = initial_final_check(F, "final")
    if w:
        r.witnesses["final"] = w
    bad = r.implication_violations()
    if bad:
        raise NotFunctorial(f"functor class implications violated: {bad}")
    return r


# -- comma factorization -----------------------------------------------------

@dataclass
class CommaFactorization:
    first: FinFunctor
    second: FinFunctor
    middle: FinCategory
    composite_equals_input: bool
    certificates: dict


def comma_factorization(f: FinFunctor, discretize=False):
    """Factor f: C -> D through f/D (or its fiberwise discretization).

    Plain mode: first: c |-> (c, f c, id) is fully faithful with a right
    adjoint; second is the codomain projection, a cocartesian fibration.
    Discretized mode: the middle is the total category of d |-> pi0(f/d),
    first is an initial functor, second a discrete opfibration.
    """
    C, D = f.dom, f.cod
    if not discretize:
        mid, pr_c, pr_d = comma(f, identity_functor(D))
        ob = {c: (c, f.ob[c], D.ident[f.ob[c]]) for c in C.objects}
        ar = {}
        for m in C.arrows:
            c, c2 = C.src[m], C.tgt[m]
            ar[m] = (m, f.ar[m], ob[c], ob[c2])
        first = FinFunctor(f"unit[{f.name}]", C, mid, ob, ar)
        second = pr_d
        comp_ok = _functors_equal(_compose(second, first), f)
        ff, _ = fully_faithful(first)
        radj = find_adjoint(first, "right")
        cocart, w = grothendieck_fibration_check(second, "cocart")
        certs = {"first_fully_faithful": ff,
                 "first_has_right_adjoint": not isinstance(radj, NoAdjoint),
                 "second_cocartesian_fibration": cocart}
        if w:
            certs["second_witness"] = w
        return CommaFactorization(first, second, mid, comp_ok, certs)
    # discretized: comprehensive-style factorization
    pi0 = _pi0_comma_diagram(f)
    mid, proj = groth_of_diagram(pi0)
    comp_of = _comma_component_map(f, pi0)
    ob = {c: (f.ob[c], comp_of[(c, D.ident[f.ob[c]])]) for c in C.objects}
    ar = {}
    for m in C.arrows:
        c, c2 = C.src[m], C.tgt[m]
        ar[m] = (ob[c], ob[c2], f.ar[m])
    first = FinFunctor(f"unit0[{f.name}]", C, mid, ob, ar)
    second = proj
    comp_ok = _functors_equal(_compose(second, first), f)
    init, wi = initial_final_check(first, "initial")
    dof, wd = discrete_fibration_check(second, "co")
    certs = {"first_initial": init, "second_discrete_opfibration": dof}
    if wi:
        certs["first_witness"] = wi
    if wd:
        certs["second_witness"] = wd
    return CommaFactorization(first, second, mid, comp_ok, certs)


def _compose(G, F):
    from .fincat import compose_functors
    return compose_functors(G, F)


def _functors_equal(F, G):
    return F.ob == G.ob and F.ar == G.ar and F.dom == G.dom and F.cod == G.cod


def _pi0_comma_diagram(f: FinFunctor) -> SetDiagram:
    """d |-> connected components of f/d, as a set-valued functor on cod f."""
    C, D = f.dom, f.cod
    comp_of = _comma_component_map(f, None)
    value = {}
    for d in D.objects:
        value[d] = frozenset(comp_of[(c, a)] for c in C.objects
                             for a in D.hom(f.ob[c], d))
    action = {}
    for e in D.arrows:
        d = D.src[e]
        m = {}
        for c in C.objects:
            for a in D.hom(f.ob[c], d):
                m[comp_of[(c, a)]] = comp_of[(c, D.comp[(e, a)])]
        action[e] = m
    return SetDiagram(D, value, action)


def _comma_component_map(f: FinFunctor, _cache):
    """(c, a: fc -> d) |-> canonical representative of its component in f/d."""
    C, D = f.dom, f.cod
    comp_of = {}
    for d in D.objects:
        objs = [(c, a) for c in C.objects for a in D.hom(f.ob[c], d)]
        adj = {o: set() for o in objs}
        for (c1, a1) in objs:
            for (c2, a2) in objs:
                if any(D.comp[(a2, f.ar[p])] == a1 for p in C.hom(c1, c2)):
                    adj[(c1, a1)].add((c2, a2))
                    adj[(c2, a2)].add((c1, a1))
        seen_global = set()
        for o in sorted(objs, key=_okey):
            if o in seen_global:
                continue
            block = {o}
            stack = [o]
            while stack:
                t = stack.pop()
                for t2 in adj[t]:
                    if t2 not in block:
                        block.add(t2)
                        stack.append(t2)
            rep = min(block, key=_okey)
            for t in block:
                comp_of[t] = ("k", d, rep)
                seen_global.add(t)
    return comp_of


# -- discrete opfibrations <-> set-valued functors ---------------------------

def groth_of_diagram(Dg: SetDiagram):
    """Total category of a set-valued functor; a discrete opfibration."""
    S = Dg.shape
    objs = [(x, e) for x in S.objects for e in sorted(Dg.value[x], key=_okey)]
    arrows, src, tgt, ident, comp = [], {}, {}, {}, {}
    for (x, e) in objs:
        for a in S.hom_from(x):
            y = S.tgt[a]
            e2 = Dg.action[a][e]
            t = ((x, e), (y, e2), a)
            arrows.append(t)
            src[t], tgt[t] = (x, e), (y, e2)
    for (x, e) in objs:
        ident[(x, e)] = ((x, e), (x, e), S.ident[x])
    for t1 in arrows:
        for t2 in arrows:
            if tgt[t1] == src[t2]:
                comp[(t2, t1)] = (src[t1], tgt[t2], S.comp[(t2[2], t1[2])])
    total = FinCategory(f"El({S.name})", objs, arrows, src, tgt, ident, comp,
                        validate=False)
    proj = FinFunctor("proj", total, S, {o: o[0] for o in objs},
                      {t: t[2] for t in arrows}, validate=False)
    return total, proj


def dof_fiber_diagram(F: FinFunctor) -> SetDiagram:
    """The set-valued functor of a discrete opfibration (round-trip inverse)."""
    ok, w = discrete_fibration_check(F, "co")
    if not ok:
        raise NotFunctorial(f"not a discrete opfibration: {w!r}")
    C, D = F.dom, F.cod
    value = {d: frozenset(x for x in C.objects if F.ob[x] == d)
             for d in D.objects}
    action = {}
    for e in D.arrows:
        m = {}
        for x in value[D.src[e]]:
            lift = [t for t in C.hom_from(x) if F.ar[t] == e][0]
            m[x] = C.tgt[lift]
        action[e] = m
    return SetDiagram(D, value, action)


# -- categories of set-valued functors ---------------------------------------

def diagram_key(Dg: SetDiagram):
    S = Dg.shape
    return (tuple((x, tuple(sorted(Dg.value[x], key=_okey))) for x in S.objects),
            tuple((a, tuple(sorted(Dg.action[a].items(), key=_okey)))
                  for a in S.arrows))


_DIAGRAM_CAT_CACHE = {}


def diagram_category(C: FinCategory, max_size, cap=4000):
    """Fun(C, Set_<=max_size) materialized, values canonical initial segments.

    Objects are SetDiagrams keyed canonically; arrows are natural families.
    Exceeding ``cap`` objects raises NotFunctorial (resource guard).
    """
    ck = (C, max_size, cap)
    if ck in _DIAGRAM_CAT_CACHE:
        return _DIAGRAM_CAT_CACHE[ck]
    pools = {s: frozenset(range(s)) for s in range(max_size + 1)}
    diagrams = []
    sizes = list(range(max_size + 1))
    non_id = [a for a in C.arrows if not C.is_identity(a)]
    for size_combo in itertools.product(sizes, repeat=len(C.objects)):
        sz = dict(zip(C.objects, size_combo))
        arrow_choices = []
        feasible = True
        for a in non_id:
            s, t = sz[C.src[a]], sz[C.tgt[a]]
            maps = [dict(zip(range(s), vals))
                    for vals in itertools.product(range(t), repeat=s)]
            if not maps:
                feasible = False
                break
            arrow_choices.append((a, maps))
        if not feasible:
            continue
        for combo in itertools.product(*[m for _, m in arrow_choices]):
            action = {a: mp for (a, _), mp in zip(arrow_choices, combo)}
            try:
                Dg = SetDiagram(C, {x: pools[sz[x]] for x in C.objects}, action)
            except NotFunctorial:
                continue
            diagrams.append(Dg)
            if len(diagrams) > cap:
                raise NotFunctorial(f"diagram category over {C.name} exceeds cap")
    by_key = {diagram_key(D): D for D in diagrams}
    objs = sorted(by_key, key=_okey)
    arrows, src, tgt, ident, comp = [], {}, {}, {}, {}
    for k1 in objs:
        D1 = by_key[k1]
        for k2 in objs:
            D2 = by_key[k2]
            for alpha in _nat_families(C, D1, D2):
                t = (k1, k2, alpha)
                arrows.append(t)
                src[t], tgt[t] = k1, k2
    for k in objs:
        D1 = by_key[k]
        ident[k] = (k, k, tuple((x, tuple((e, e) for e in sorted(D1.value[x], key=_okey)))
                                for x in C.objects))
    for t1 in arrows:
        for t2 in arrows:
            if tgt[t1] == src[t2]:
                comp[(t2, t1)] = (src[t1], tgt[t2],
                                  _compose_families(t1[2], t2[2]))
    cat = FinCategory(f"Fun({C.name},Set<={max_size})", objs, arrows, src, tgt,
                      ident, comp, validate=False)
    _DIAGRAM_CAT_CACHE[ck] = (cat, by_key)
    return cat, by_key


def _nat_families(C, D1, D2):
    """All natural transformations D1 => D2 as canonical component tuples."""
    objs = list(C.objects)
    per_obj = []
    for x in objs:
        dom = sorted(D1.value[x], key=_okey)
        cod = sorted(D2.value[x], key=_okey)
        maps = [tuple(zip(dom, vals))
                for vals in itertools.product(cod, repeat=len(dom))]
        if not maps and dom:
            return
        per_obj.append(maps if dom else [tuple()])
    for combo in itertools.product(*per_obj):
        comp = {x: dict(c) for x, c in zip(objs, combo)}
        if all(all(comp[C.tgt[a]][D1.action[a][e]] == D2.action[a][comp[C.src[a]][e]]
                   for e in D1.value[C.src[a]]) for a in C.arrows):
            yield tuple((x, tuple(sorted(comp[x].items(), key=_okey)))
                        for x in objs)


def _compose_families(f1, f2):
    """Componentwise composite of canonical family tuples (f2 after f1)."""
    d1 = {x: dict(items) for x, items in f1}
    d2 = {x: dict(items) for x, items in f2}
    return tuple((x, tuple(sorted({e: d2[x][v] for e, v in d1[x].items()}.items(),
                                  key=_okey))) for x, _ in f1)


def restriction_functor(u: FinFunctor, dcat_dom_pair, dcat_cod_pair):
    """Precomposition Fun(D, Set) -> Fun(C, Set) along u: C -> D."""
    C, D = u.dom, u.cod
    catD, byD = dcat_dom_pair
    catC, byC = dcat_cod_pair
    ob, ar = {}, {}
    for k in catD.objects:
        E = byD[k]
        value = {c: E.value[u.ob[c]] for c in C.objects}
        action = {a: dict(E.action[u.ar[a]]) for a in C.arrows}
        ob[k] = diagram_key(SetDiagram(C, value, action, validate=False))
    for t in catD.arrows:
        k1, k2, fam = t
        d = {x: dict(items) for x, items in fam}
        restricted = tuple((c, tuple(sorted(d[u.ob[c]].items(), key=_okey)))
                           for c in C.objects)
        ar[t] = (ob[k1], ob[k2], restricted)
    return FinFunctor(f"res[{u.name}]", catD, catC, ob, ar)


from functools import lru_cache


@lru_cache(maxsize=None)
def _comma_shape(u: FinFunctor, d):
    """The comma u/d as a category (objects (c, a: u c -> d)), cached."""
    C, D = u.dom, u.cod
    objs = [(c, a) for c in C.objects for a in D.hom(u.ob[c], d)]
    shape_arrows = []
    for (c1, a1) in objs:
        for (c2, a2) in objs:
            for p in C.hom(c1, c2):
                if D.comp[(a2, u.ar[p])] == a1:
                    shape_arrows.append(((c1, a1), (c2, a2), p))
    src = {t: t[0] for t in shape_arrows}
    tgt = {t: t[1] for t in shape_arrows}
    ident = {o: (o, o, C.ident[o[0]]) for o in objs}
    comp = {}
    for t1 in shape_arrows:
        for t2 in shape_arrows:
            if tgt[t1] == src[t2]:
                comp[(t2, t1)] = (t1[0], t2[1], C.comp[(t2[2], t1[2])])
    return FinCategory(f"({u.name}/{d!r})", objs, shape_arrows, src, tgt, ident,
                       comp, validate=False)


def lan_pointwise(u: FinFunctor, F: SetDiagram, d):
    """Left Kan extension value at d as the comma colimit (the oracle)."""
    shape = _comma_shape(u, d)
    diag = SetDiagram(shape,
                      {o: F.value[o[0]] for o in shape.objects},
                      {t: dict(F.action[t[2]]) for t in shape.arrows},
                      validate=False)
    return set_limit_colimit(diag, "colimit")


# -- bounded pullback-stability ------------------------------------------------

@dataclass
class StabilityReport:
    verdict: bool
    precondition_failure: object = None
    witness: object = None
    squares_checked: int = 0
    members_checked: int = 0


_CLASS_CHECKS = {}


def _class_check(name):
    if name == "initial":
        return lambda F: initial_final_check(F, "initial")[0]
    if name == "final":
        return lambda F: initial_final_check(F, "final")[0]
    if name == "ff_left_adjoint":
        return lambda F: (fully_faithful(F)[0]
                          and not isinstance(find_adjoint(F, "right"), NoAdjoint))
    raise ValueError(f"class {name!r}")


def pullback_stability_of_class(u: FinFunctor, cls, probes, members):
    """Bounded check: base changes of u pull class members back into the class.

    ``probes`` are functors t: T -> cod(u) giving certified strict pullback
    squares (built canonically); ``members`` are functors l: E -> T' paired
    with the probe they anchor to (here: any member whose codomain matches a
    base-change target is used).  u must be Conduche first, else the
    precondition failure is reported.
    """
    ok, w = is_conduche(u)
    if not ok:
        return StabilityReport(False, precondition_failure=("not_conduche", w))
    check = _class_check(cls)
    squares = 0
    checked = 0
    for t in probes:
        P, ubar, t_leg = _base_change_square(u, t)
        squares += 1
        for l in members:
            if l.cod != t.dom:
                continue
            if not check(l):
                continue
            checked += 1
            corner, pr_E, pr_P = cat_pullback(l, ubar)
            if not check(pr_P):
                return StabilityReport(False, witness=(t.name, l.name),
                                       squares_checked=squares,
                                       members_checked=checked)
    return StabilityReport(True, squares_checked=squares,
                           members_checked=checked)


def _base_change_square(u: FinFunctor, t: FinFunctor):
    """The certified strict pullback square of u along t; returns
    (corner, ubar: corner -> dom t, vbar: corner -> dom u)."""
    if t.cod != u.cod:
        raise NotFunctorial("probe does not target cod(u)")
    P, pr_u, pr_t = cat_pullback(u, t)
    return P, pr_t, pr_u
