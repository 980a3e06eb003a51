"""Set-valued-functor row: strict smoothness detects discrete opfibrations.

The indexed category sends a probe category C to its set-valued functors
with values of bounded size; the forgetful map into the universe of Cat is
the Grothendieck construction.  A probe functor f is strictly smooth when,
for every bounded diagram F on dom f, the canonical comparison from
f . (El F -> C) to the Grothendieck construction of the left Kan extension
is an isomorphism over cod f.  Kan values are computed by the pointwise
comma-colimit oracle, with the universal cocone retained for the unit.
"""

from __future__ import annotations

import itertools

from ..fincat import (FinCategory, FinFunctor, SetDiagram,
                      interval_category, terminal_category, discrete_category,
                      parallel_pair_category, chain_category)
from ..catclasses import (diagram_category, groth_of_diagram, lan_pointwise, restriction_functor,
                          discrete_fibration_check)


def standard_probes():
    """Small categories used as objects of the probe base."""
    return {
        "one": terminal_category(),
        "disc2": discrete_category(["a", "b"]),
        "interval": interval_category(),
        "pair": parallel_pair_category(),
        "chain2": chain_category(2),
    }


def all_functors(C: FinCategory, D: FinCategory, cap=20000):
    """Every functor C -> D, by enumeration of assignments."""
    non_id = [a for a in C.arrows if not C.is_identity(a)]
    out = []
    obs = list(itertools.product(D.objects, repeat=len(C.objects)))
    for ob_combo in obs:
        ob = dict(zip(C.objects, ob_combo))
        choices = []
        ok = True
        for a in non_id:
            cands = D.hom(ob[C.src[a]], ob[C.tgt[a]])
            if not cands:
                ok = False
                break
            choices.append((a, cands))
        if not ok:
            continue
        for combo in itertools.product(*[c for _, c in choices]):
            ar = {a: m for (a, _), m in zip(choices, combo)}
            for x in C.objects:
                ar[C.ident[x]] = D.ident[ob[x]]
            good = True
            for f in C.arrows:
                for g in C.hom_from(C.tgt[f]):
                    if ar[C.comp[(g, f)]] != D.comp[(ar[g], ar[f])]:
                        good = False
                        break
                if not good:
                    break
            if good:
                out.append(FinFunctor(f"<{len(out)}>", C, D, ob, ar,
                                      validate=False))
                if len(out) > cap:
                    raise RuntimeError("functor enumeration cap")
    return out


def lan_diagram(u: FinFunctor, F: SetDiagram):
    """Left Kan extension of F along u as a SetDiagram, with unit components.

    Values are comma colimits (the pointwise oracle); the action transports
    colimit classes along post-composition; the unit at c is the colimit
    injection at (c, identity)."""
    C, D = u.dom, u.cod
    carriers, cocones = {}, {}
    for d in D.objects:
        carrier, cocone = lan_pointwise(u, F, d)
        carriers[d] = carrier
        cocones[d] = cocone
    action = {}
    for e in D.arrows:
        d, d2 = D.src[e], D.tgt[e]
        m = {}
        for rep in carriers[d]:
            (c, alpha), x = rep
            target_obj = (c, D.comp[(e, alpha)])
            m[rep] = cocones[d2][target_obj][x]
        action[e] = m
    lan = SetDiagram(D, carriers, action)
    unit = {c: {x: cocones[u.ob[c]][(c, D.ident[u.ob[c]])][x]
                for x in F.value[c]}
            for c in C.objects}
    return lan, unit


_GROTH_CACHE = {}


def _groth_cached(key, F):
    if key not in _GROTH_CACHE:
        _GROTH_CACHE[key] = groth_of_diagram(F)
    return _GROTH_CACHE[key]


def strict_smooth_dof(u: FinFunctor, max_size=2):
    """Invertibility of the strict-smoothness mate at every bounded diagram.

    Componentwise: the canonical functor El(F) -> El(Lan_u F) over cod u,
    induced by the Kan unit, must be an isomorphism of categories strictly
    over cod u.  Returns (verdict, witness diagram key)."""
    C, D = u.dom, u.cod
    dcat, by_key = diagram_category(C, max_size)
    for key in dcat.objects:
        F = by_key[key]
        lan, unit = lan_diagram(u, F)
        totF, _projF = _groth_cached((C, key), F)
        totL, _projL = groth_of_diagram(lan)
        ob_map = {}
        for (c, x) in totF.objects:
            ob_map[(c, x)] = (u.ob[c], unit[c][x])
        if len(set(ob_map.values())) != len(ob_map) or \
                len(totF.objects) != len(totL.objects):
            return False, key
        lan_arrows = set(totL.arrows)
        seen = set()
        ok = True
        for t in totF.arrows:
            (c, x), (c2, x2), a = t
            img = (ob_map[(c, x)], ob_map[(c2, x2)], u.ar[a])
            if img not in lan_arrows:
                ok = False
                break
            seen.add(img)
        if not ok or len(seen) != len(totF.arrows) or \
                len(totF.arrows) != len(totL.arrows):
            return False, key
    return True, None


def dof_strict_smooth_row(max_size=2, probes=None):
    """strict smooth set == discrete opfibrations, over all probe functors."""
    probes = probes or standard_probes()
    cats = list(probes.values())
    agree = []
    disagree = []
    for Cdom in cats:
        for Ccod in cats:
            for f in all_functors(Cdom, Ccod):
                ss, _ = strict_smooth_dof(f, max_size)
                dof, _ = discrete_fibration_check(f, "co")
                (agree if ss == dof else disagree).append(
                    (Cdom.name, Ccod.name, f.ob, ss, dof))
    return {"checked": len(agree) + len(disagree), "disagreements": disagree}


# -- the probe base as a materialized category of categories --------------------

def probe_cat_base(probes=None, cap=40000):
    """A materialized category whose objects are probe categories and whose
    arrows are all functors between them (composition by functor
    composition)."""
    from ..fincat import FinCategory, compose_functors
    probes = probes or standard_probes()
    objs = sorted(probes)
    arrows, src, tgt = [], {}, {}
    fns = {}
    for a in objs:
        for b in objs:
            for i, f in enumerate(all_functors(probes[a], probes[b])):
                nm = (a, b, i)
                arrows.append(nm)
                src[nm], tgt[nm] = a, b
                fns[nm] = f
                if len(arrows) > cap:
                    raise RuntimeError("probe base cap")
    ident = {}
    for a in objs:
        idf = [nm for nm in arrows if src[nm] == tgt[nm] == a
               and fns[nm].ob == {x: x for x in probes[a].objects}
               and fns[nm].ar == {m: m for m in probes[a].arrows}]
        ident[a] = idf[0]
    by_data = {}
    for nm in arrows:
        f = fns[nm]
        by_data[(src[nm], tgt[nm],
                 tuple(sorted(f.ob.items(), key=repr)),
                 tuple(sorted(f.ar.items(), key=repr)))] = nm
    comp = {}
    for m in arrows:
        for n in arrows:
            if tgt[m] != src[n]:
                continue
            g = compose_functors(fns[n], fns[m])
            key = (src[m], tgt[n],
                   tuple(sorted(g.ob.items(), key=repr)),
                   tuple(sorted(g.ar.items(), key=repr)))
            comp[(n, m)] = by_data[key]
    cat = FinCategory("Probes", objs, arrows, src, tgt, ident, comp)
    cat_probes = dict(probes)
    return _ProbeBase(cat, cat_probes, fns)


class _ProbeBase:
    """Wrapper pairing the materialized probe category with its functors."""

    def __init__(self, cat, probes, fns):
        self.cat = cat
        self.probes = probes
        self.fns = fns
        self.name = cat.name
        self.objects = cat.objects

    def functor_of(self, arrow):
        return self.fns[arrow]

    def category_of(self, obj):
        return self.probes[obj]

    def __getattr__(self, item):
        return getattr(self.cat, item)


class DofIndexed:
    """Set-valued functors with bounded values, indexed over the probe base.

    fiber(C) is the materialized Fun(C, Set_<=bound); transitions are
    restriction along the probe functors, which compose strictly.
    """

    def __init__(self, base: _ProbeBase, bound=2):
        self.base = base
        self.bound = bound
        self.strict = True
        self.name = f"dof<= {bound}[{base.name}]"

    def fiber(self, obj):
        cat, _ = diagram_category(self.base.category_of(obj), self.bound)
        return cat

    def transition(self, arrow):
        f = self.base.functor_of(arrow)
        pair_dom = diagram_category(f.cod, self.bound)
        pair_cod = diagram_category(f.dom, self.bound)
        return restriction_functor(f, pair_dom, pair_cod)
