"""Seeded randomized property suites.

Instances are generated from an explicit random.Random seed, so identical
seeds give identical reports.  Each suite returns (instances checked,
violations); the acceptance bar is zero violations.
"""

from __future__ import annotations

import random

from .fincat import (FinCategory, poset_category, build_functor,
                     NoPullback)
from .adjunction import find_adjoint, NoAdjoint, natural_iso_between
from .fibred import SelfIndexing
from .classify import Classifier, square_mate_component, MissingAdjoint
from .corpus.bases import FinSetBase, FnArrow, skeletal_set
from .corpus.generators import PowersetIndexed


def rand_meet_lattice(rng: random.Random, universe=4, generators=3):
    """A random family of subsets closed under intersection, with a top.

    As a poset category it has all pullbacks (binary meets below a common
    bound), so classification can quantify over all of it.
    """
    top = frozenset(range(universe))
    fam = {top}
    for _ in range(generators):
        fam.add(frozenset(i for i in range(universe) if rng.random() < 0.5))
    changed = True
    while changed:
        changed = False
        for a in list(fam):
            for b in list(fam):
                if a & b not in fam:
                    fam.add(a & b)
                    changed = True
    elems = sorted(fam, key=lambda s: (len(s), sorted(s)))
    names = {s: "s" + "".join(str(i) for i in sorted(s)) for s in elems}
    leq = {(names[a], names[b]) for a in elems for b in elems if a <= b}
    return poset_category(f"L{len(elems)}", [names[s] for s in elems],
                          lambda x, y: (x, y) in leq)


def rand_monotone(rng: random.Random, P: FinCategory, Q: FinCategory):
    """A random monotone map P -> Q as a functor (None if the draw fails)."""
    order = list(P.objects)
    for _ in range(40):
        assign = {x: rng.choice(Q.objects) for x in order}
        ok = all(not P.hom(a, b) or Q.hom(assign[a], assign[b])
                 for a in order for b in order)
        if ok:
            ar = {}
            for f in P.arrows:
                a, b = P.src[f], P.tgt[f]
                ar[f] = Q.hom(assign[a], assign[b])[0]
            return build_functor(f"m", P, Q, assign, ar)
    return None


def rand_function(rng: random.Random, base: FinSetBase, n, m):
    X, Z = skeletal_set(n), skeletal_set(m)
    if m == 0 and n > 0:
        return None
    return FnArrow.of(X, Z, {x: rng.randrange(m) for x in X} if m else {})


def suite_adjunction_triangles(rng: random.Random, instances):
    """find_adjoint results re-certify their triangle identities, and the
    left adjoint of a composite agrees with the composite of left adjoints
    up to a natural isomorphism."""
    violations = []
    checked = 0
    attempts = 0
    while checked < instances and attempts < instances * 30:
        attempts += 1
        i = attempts
        P = rand_meet_lattice(rng, 4, 3)
        Q = rand_meet_lattice(rng, 4, 3)
        G = rand_monotone(rng, P, Q)
        if G is None:
            continue
        checked += 1
        for side in ("left", "right"):
            adj = find_adjoint(G, side)
            if isinstance(adj, NoAdjoint):
                continue
            # Adjunction.__init__ certifies the triangles; re-derive one here
            F, Gr = adj.left, adj.right
            for c in F.dom.objects:
                lhs = F.cod.comp[(adj.counit.at(F.ob[c]),
                                  F.ar[adj.unit.at(c)])]
                if lhs != F.cod.ident[F.ob[c]]:
                    violations.append(("triangle", i, side, c))
        R = rand_meet_lattice(rng, 4, 2)
        H = rand_monotone(rng, Q, R)
        if H is None:
            continue
        from .fincat import compose_functors
        a1 = find_adjoint(G, "left")
        a2 = find_adjoint(H, "left")
        a12 = find_adjoint(compose_functors(H, G), "left")
        if not isinstance(a1, NoAdjoint) and not isinstance(a2, NoAdjoint) \
                and not isinstance(a12, NoAdjoint):
            comp = compose_functors(a1.left, a2.left)
            if natural_iso_between(a12.left, comp) is None:
                violations.append(("composite_adjoint", i))
    return checked, violations


def suite_mate_pasting(rng: random.Random, instances):
    """Pasted-square mates factor as the composite of the two mates.

    Over meet-lattice bases the chosen pullbacks are unique, squares paste
    on the nose, and the pasting law is literal arrow equality in the fiber.
    """
    violations = []
    checked = 0
    for i in range(instances):
        B = rand_meet_lattice(rng, 4, 3)
        U = SelfIndexing(B, strict=True)
        arrows = [a for a in B.arrows]
        u = rng.choice(arrows)
        Z = B.tgt[u]
        vs = [v for v in B.arrows if B.tgt[v] == Z]
        if not vs:
            continue
        v = rng.choice(vs)
        W = B.src[v]
        vps = [w for w in B.arrows if B.tgt[w] == W]
        if not vps:
            continue
        vp = rng.choice(vps)
        try:
            sq_outer = B.pullback(u, v)
            ubar = sq_outer.to_src_g
            sq_inner = B.pullback(ubar, vp)
            sq_big = B.pullback(u, B.compose(v, vp))
        except NoPullback:
            continue
        if sq_big.apex != sq_inner.apex:
            # unique pullbacks in a skeletal poset: apexes must agree
            violations.append(("apex", i))
            continue
        checked += 1
        FX = U.fiber(B.src[u])
        FV = U.fiber(B.src[vp])
        for b in FX.objects:
            try:
                big, _, _ = square_mate_component(U, sq_big, "left", b)
                outer, _, _ = square_mate_component(U, sq_outer, "left", b)
                inner_at = U.transition(sq_outer.to_src_f).ob[b]
                inner, _, _ = square_mate_component(U, sq_inner, "left",
                                                    inner_at)
                vpstar = U.transition(vp)
                composite = FV.comp[(vpstar.ar[outer], inner)]
            except MissingAdjoint:
                continue
            if big != composite:
                violations.append(("pasting", i, b))
    return checked, violations


def suite_implication_lattice(rng: random.Random, instances):
    """classify() respects the implication lattice on random instances."""
    violations = []
    checked = 0
    base4 = FinSetBase(4)
    scope2 = base4.tier_scope(2)
    ps = PowersetIndexed(base4)
    cl_ps = Classifier(ps, scope2, mode="nested")
    for i in range(instances):
        if i % 2 == 0:
            n, m = rng.randrange(3), rng.randrange(1, 3)
            u = rand_function(rng, base4, n, m)
            if u is None:
                continue
            r = cl_ps.classify(u)
        else:
            B = rand_meet_lattice(rng, 4, 3)
            U = SelfIndexing(B, strict=True)
            u = rng.choice(list(B.arrows))
            r = Classifier(U, mode="nested").classify(u)
        checked += 1
        bad = r.implication_violations()
        if bad:
            violations.append((i, bad))
    return checked, violations


def suite_closure_properties(rng: random.Random, instances):
    """Smooth/proper/acyclic verdicts contain isos and are closed under
    composition and base change within the scope."""
    violations = []
    checked = 0
    for i in range(instances):
        B = rand_meet_lattice(rng, 4, 2)
        U = SelfIndexing(B, strict=True)
        cl = Classifier(U, mode="nested")
        verdicts = {}
        for a in B.arrows:
            r = cl.classify(a, with_localic=False)
            verdicts[a] = r
        checked += 1
        for a in B.arrows:
            if B.is_iso(a):
                r = verdicts[a]
                if not (r.smooth and r.proper and r.acyclic):
                    violations.append(("iso", i, a))
        for a in B.arrows:
            for b in B.hom_from(B.tgt[a]):
                ba = B.compose(b, a)
                for key in ("smooth", "proper", "acyclic"):
                    if getattr(verdicts[a], key) and getattr(verdicts[b], key) \
                            and not getattr(verdicts[ba], key):
                        violations.append(("composition", i, key, a, b))
        for a in B.arrows:
            for v in B.hom_into(B.tgt[a]):
                try:
                    sq = B.pullback(a, v)
                except NoPullback:
                    continue
                abar = sq.to_src_g
                for key in ("smooth", "proper", "acyclic"):
                    if getattr(verdicts[a], key) and \
                            not getattr(verdicts[abar], key):
                        violations.append(("base_change", i, key, a, v))
    return checked, violations


def suite_regular_iff_sums(rng: random.Random, instances):
    """Independently computed regularity and sums-existence verdicts agree
    on random pullback-stable pointed classes over random poset bases."""
    from .fibred import make_calibration, NotStable
    from .classify import regular_iff_sums
    violations = []
    checked = 0
    attempts = 0
    while checked < instances and attempts < instances * 30:
        attempts += 1
        B = rand_meet_lattice(rng, 3, 2)
        if len(B.objects) > 4:
            continue
        members = set(a for a in B.arrows if B.is_iso(a))
        for a in B.arrows:
            if rng.random() < 0.4:
                members.add(a)
        # close under base change along everything (pullback-stability)
        changed = True
        while changed:
            changed = False
            for m in list(members):
                for v in B.hom_into(B.tgt[m]):
                    try:
                        sq = B.pullback(m, v)
                    except NoPullback:
                        continue
                    if sq.to_src_g not in members:
                        members.add(sq.to_src_g)
                        changed = True
        try:
            cal = make_calibration(B, frozenset(members), name=f"r{checked}")
        except NotStable:
            continue
        if not cal.pointed:
            continue
        checked += 1
        rep = regular_iff_sums(cal)
        if not rep.agree:
            violations.append((checked, rep.regular, rep.has_sums, rep.detail))
    return checked, violations


SUITES = {
    "adjunction-triangles": suite_adjunction_triangles,
    "mate-pasting": suite_mate_pasting,
    "implication-lattice": suite_implication_lattice,
    "closure-properties": suite_closure_properties,
    "regular-iff-sums": suite_regular_iff_sums,
}


def run_property_suites(seed, instances=200, suites=None):
    """Run the suites with one seeded generator each; deterministic."""
    doc = {"seed": seed, "instances": instances, "suites": {}}
    all_ok = True
    for name in sorted(suites or SUITES):
        fn = SUITES[name]
        rng = random.Random(f"{seed}:{name}")
        checked, violations = fn(rng, instances)
        doc["suites"][name] = {
            "checked": checked,
            "violations": [repr(v) for v in violations[:10]],
            "violation_count": len(violations),
        }
        all_ok = all_ok and not violations
    doc["passed"] = all_ok
    return doc
