"""Sum/product existence bounds for truncated set universes.

Compares the operational story (which index sets admit coproducts and
products of bounded families, decided by universal-property enumeration)
with the finite reading of the cardinal-arithmetic bounds.  The two can
disagree at finite scale; both are reported and no side is asserted as the
truth of the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


def _cocone_mediators(family, cocone_c, csize, t, cocone_t):
    """Mediators m: C -> T with m . q_i = t_i, counted exactly."""
    forced = {}
    for qi, ti in zip(cocone_c, cocone_t):
        for e, c in qi.items():
            v = ti[e]
            if c in forced and forced[c] != v:
                return 0
            forced[c] = v
    free = [c for c in range(csize) if c not in forced]
    return t ** len(free)   # 0**0 == 1: no free points, one mediator


def _cone_mediators(family, cone_c, csize, t, cone_t):
    """Mediators m: T -> C with p_i . m = s_i, counted exactly."""
    count = 1
    for x in range(t):
        cands = [c for c in range(csize)
                 if all(cone_c[i][c] == cone_t[i][x] for i in range(len(family)))]
        count *= len(cands)
        if count == 0:
            return 0
    return count


def _all_tuples(sizes, t):
    """All families of maps (S_i -> T)_i as value tuples."""
    pools = []
    for s in sizes:
        pools.append(list(itertools.product(range(t), repeat=s))
                     if t > 0 or s == 0 else [])
    return itertools.product(*pools)


def coproduct_exists(sizes, kappa, literal=None):
    """Does the family with these sizes have a coproduct in Set_<kappa?

    literal=True runs the full universal-property enumeration (feasible for
    kappa <= 3); otherwise candidates are pruned by the separation argument
    (joint injectivity/surjectivity forced by 2-element competitors, valid
    for kappa >= 3) and the surviving canonical cocone is UP-verified.
    """
    total = sum(sizes)
    if literal is None:
        literal = kappa <= 3
    if literal:
        for csize in range(kappa):
            for cocone_vals in _all_tuples(sizes, csize):
                cocone = [dict(enumerate(v)) for v in cocone_vals]
                ok = True
                for t in range(kappa):
                    for comp_vals in _all_tuples(sizes, t):
                        comp = [dict(enumerate(v)) for v in comp_vals]
                        if _cocone_mediators(sizes, cocone, csize, t, comp) != 1:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return True
        return False
    # pruned route: kappa >= 3, so 2-element competitors force the canonical
    # disjoint union; it fits iff total < kappa, and is then UP-verified
    if total >= kappa:
        return False
    offsets = []
    acc = 0
    for s in sizes:
        offsets.append(acc)
        acc += s
    cocone = [{e: offsets[i] + e for e in range(s)}
              for i, s in enumerate(sizes)]
    for t in range(kappa):
        for comp_vals in _all_tuples(sizes, t):
            comp = [dict(enumerate(v)) for v in comp_vals]
            if _cocone_mediators(sizes, cocone, total, t, comp) != 1:
                return False
    return True


def product_exists(sizes, kappa, literal=None):
    """Dual of coproduct_exists for products."""
    total = 1
    for s in sizes:
        total *= s
    if literal is None:
        literal = kappa <= 3
    if literal:
        for csize in range(kappa):
            # enumerate cones: projections p_i: C -> S_i
            pools = [list(itertools.product(range(s), repeat=csize))
                     if s > 0 or csize == 0 else [] for s in sizes]
            for cone_vals in itertools.product(*pools):
                cone = [dict(enumerate(v)) for v in cone_vals]
                ok = True
                for t in range(kappa):
                    tpools = [list(itertools.product(range(s), repeat=t))
                              if s > 0 or t == 0 else [] for s in sizes]
                    for comp_vals in itertools.product(*tpools):
                        comp = [dict(enumerate(v)) for v in comp_vals]
                        if _cone_mediators(sizes, cone, csize, t, comp) != 1:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return True
        return False
    if total >= kappa:
        return False
    elems = list(itertools.product(*[range(s) for s in sizes]))
    index = {e: i for i, e in enumerate(elems)}
    cone = [{index[e]: e[i] for e in elems} for i in range(len(sizes))]
    for t in range(kappa):
        tpools = [list(itertools.product(range(s), repeat=t))
                  if s > 0 or t == 0 else [] for s in sizes]
        for comp_vals in itertools.product(*tpools):
            comp = [dict(enumerate(v)) for v in comp_vals]
            if _cone_mediators(sizes, cone, total, t, comp) != 1:
                return False
    return True


@dataclass
class BoundsReport:
    kappa: int
    index_bound: int
    operational_smooth: list = field(default_factory=list)
    operational_proper: list = field(default_factory=list)
    arithmetic_smooth_bound: object = None
    arithmetic_proper_bound: object = None
    arithmetic_smooth: list = field(default_factory=list)
    arithmetic_proper: list = field(default_factory=list)
    agree_smooth: bool = None
    agree_proper: bool = None


def smooth_proper_bounds(kappa, M, arith_cap=64):
    """Operational vs arithmetic sum/product bounds, reported side by side.

    Operational: I (as a size <= M) is smooth/proper when every I-family of
    kappa-small sets has a coproduct/product in Set_<kappa, by exhaustive
    universal-property checks.  Arithmetic: the finite reading of the
    bounds sup{s : r < kappa => s*r < kappa} and sup{p : r < kappa =>
    r^p < kappa} (None = unbounded below the cap).  Disagreements are
    reported, never suppressed.
    """
    rep = BoundsReport(kappa=kappa, index_bound=M)
    for I in range(M + 1):
        fams = list(itertools.product(range(kappa), repeat=I))
        if all(coproduct_exists(list(f), kappa) for f in fams):
            rep.operational_smooth.append(I)
        if all(product_exists(list(f), kappa) for f in fams):
            rep.operational_proper.append(I)
    sig = None
    for s in range(arith_cap, -1, -1):
        if all(s * r < kappa for r in range(kappa)):
            sig = s
            break
    pi = None
    for p in range(arith_cap, -1, -1):
        if all(r ** p < kappa for r in range(kappa)):
            pi = p
            break
    if pi == arith_cap:
        pi = None   # unbounded below the cap
    if sig == arith_cap:
        sig = None
    rep.arithmetic_smooth_bound = sig
    rep.arithmetic_proper_bound = pi
    rep.arithmetic_smooth = [I for I in range(M + 1)
                             if sig is None or I < sig]
    rep.arithmetic_proper = [I for I in range(M + 1)
                             if pi is None or I < pi]
    rep.agree_smooth = rep.operational_smooth == rep.arithmetic_smooth
    rep.agree_proper = rep.operational_proper == rep.arithmetic_proper
    return rep
