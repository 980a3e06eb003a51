import pytest

from fibercalc.corpus.bases import (FinSetBase, FSetObj, FnArrow, skeletal_set,
                                    FinSpaceBase, SpaceObj, CtsMap,
                                    spaces_upto, poset_iso_classes)
from fibercalc.corpus.generators import (finset_universe, PowersetIndexed,
                                         powerset, kappa_small, FamilyIndexed,
                                         epi_mono, sierpinski, OpensIndexed,
                                         finite_space_setup)
from fibercalc.corpus.engines import (least_image, greatest_coimage,
                                      formula_image, formula_coimage,
                                      subsets_bc_square, subsets_classify,
                                      codomain_classify, open_map_oracle,
                                      universally_closed_oracle,
                                      opens_classify, opens_acyclic,
                                      _pre_table)
from fibercalc.corpus.bounds import (coproduct_exists, product_exists,
                                     smooth_proper_bounds)
from fibercalc.corpus.spacerow import finite_space_row
from fibercalc.classify import Classifier
from fibercalc.fincat import SizeCapExceeded


def test_finset_universe_counts():
    fu = finset_universe(2)
    assert len(fu.objects) == 3
    # functions n -> m for n, m <= 2: 1+1+1 + 0+1+2 + 0+1+4
    assert len(fu.arrows) == 11


def test_finset_universe_capped():
    with pytest.raises(SizeCapExceeded):
        finset_universe(5)


def test_powerset_fiber_counts():
    ps, base, scope = powerset(2, ambient=4)
    assert len(ps.fiber(skeletal_set(2)).objects) == 4
    assert len(ps.fiber(skeletal_set(0)).objects) == 1


def test_lazy_base_protocol():
    base = FinSetBase(9)
    X, Z = skeletal_set(3), skeletal_set(2)
    assert len(base.hom(X, Z)) == 8
    u = base.hom(X, Z)[0]
    assert base.source(u) == X and base.target(u) == Z
    assert base.is_iso(base.identity(X))
    sq = base.pullback(u, u)
    assert len(sq.apex) == sum(len(u.fiber(z)) ** 2 for z in Z)


def test_lazy_pullback_identity_and_inclusion_strict():
    base = FinSetBase(9)
    X, Z = skeletal_set(2), skeletal_set(3)
    u = FnArrow.of(X, Z, {0: 0, 1: 1})
    idz = base.identity(Z)
    sq = base.pullback(u, idz)
    assert sq.apex == X and base.is_identity(sq.to_src_f)
    sub = FSetObj.of([0, 2])
    incl = FnArrow.of(sub, Z, {0: 0, 2: 2})
    sq2 = base.pullback(incl, u)
    # preimage of a subobject is the literal preimage subset
    assert set(sq2.apex.elems) == {x for x in X if u(x) in {0, 2}}
    assert all(a == b for a, b in sq2.to_src_g.graph)


def test_quantifier_formulas_match_brute_force_small():
    base = FinSetBase(9)
    for n in range(4):
        for m in range(4):
            X, Z = skeletal_set(n), skeletal_set(m)
            for u in base.hom(X, Z):
                pre = _pre_table(u)
                for A in range(1 << n):
                    assert least_image(u, A, pre) == formula_image(u, A)
                    assert greatest_coimage(u, A, pre) == formula_coimage(u, A)


def test_exists_forall_formulas_literal():
    # u: {0,1,2} -> {0,1}, 0,1 |-> 0, 2 |-> 1: images of {0},{2},{0,2}
    base = FinSetBase(9)
    u = FnArrow.of(skeletal_set(3), skeletal_set(2), {0: 0, 1: 0, 2: 1})
    assert formula_image(u, 0b001) == 0b01
    assert formula_image(u, 0b100) == 0b10
    assert formula_image(u, 0b101) == 0b11
    assert formula_coimage(u, 0b011) == 0b01     # fiber over 0 inside A
    assert formula_coimage(u, 0b111) == 0b11
    assert formula_coimage(u, 0b101) == 0b10


def test_bitmask_engine_agrees_with_generic_classifier():
    ps, base, scope = powerset(2, ambient=4)
    cl = Classifier(ps, scope, mode="single")
    for u in scope.all_arrows():
        r1 = cl.classify(u, with_localic=False)
        r2 = subsets_classify(base, scope, u)
        assert r1.smooth == r2["smooth"]
        assert r1.proper == r2["proper"]
        assert r1.acyclic == r2["acyclic"]


def test_kappa_small_members():
    cal, base, scope = kappa_small(3, 2)
    for u in scope.all_arrows():
        assert (u in cal) == u.is_injective()
    cal3, base3, scope3 = kappa_small(2, 3)
    for u in scope3.all_arrows():
        assert (u in cal3) == all(len(u.fiber(y)) < 3 for y in u.cod)


def test_family_indexed_row2_small():
    # kappa-small families over tiny sets: acyclic = bijections, localic = all
    base = FinSetBase(4)
    scope = base.tier_scope(2)
    fam = FamilyIndexed(base, 3)
    cl = Classifier(fam, scope, mode="single")
    for u in scope.all_arrows():
        r = cl.classify(u)
        assert r.acyclic == base.is_iso(u)
        assert r.localic


def test_epi_mono_factor():
    FS, base, scope = epi_mono(2, ambient=4)
    for u in scope.all_arrows():
        l, r = FS.factor(u)
        assert l.is_surjective() and r.is_injective()
        assert base.compose(r, l) == u


def test_sierpinski_opens_sizes():
    S = sierpinski()
    assert len(S.up_masks()) == 3
    pt = SpaceObj.of([0], [])
    assert len(pt.up_masks()) == 2


def test_space_enumeration_counts():
    assert len(poset_iso_classes(2)) == 2
    assert len(poset_iso_classes(3)) == 5
    assert len(poset_iso_classes(4)) == 16
    assert len(spaces_upto(4)) == 25


def test_opens_classify_vs_oracles_small():
    oi, base, scope, tier = finite_space_setup(2, ambient=4)
    for X in tier:
        for Z in tier:
            for u in base.hom(X, Z):
                r = opens_classify(base, scope, u)
                assert r["smooth"] == open_map_oracle(u)
                assert r["proper"] == universally_closed_oracle(base, scope, u)
                assert opens_acyclic(base, scope, u) == base.is_iso(u)


def test_space_row_vectorized_agrees_with_scalar():
    row = finite_space_row(2, ambient=4)
    oi, base, scope, tier = finite_space_setup(2, ambient=4)
    for X in tier:
        for Z in tier:
            for u in base.hom(X, Z):
                r = opens_classify(base, scope, u)
                assert row["smooth"][u] == r["smooth"]
                assert row["proper"][u] == r["proper"]


def test_opens_indexed_generic_classifier_tiny():
    oi, base, scope, tier = finite_space_setup(2, ambient=4)
    cl = Classifier(oi, scope, mode="single")
    for X in tier:
        for Z in tier:
            for u in base.hom(X, Z):
                r = cl.classify(u, with_localic=False)
                assert r.smooth == open_map_oracle(u)


def test_bounds_pruned_matches_literal_kappa3():
    for sizes in [(), (0,), (1,), (2,), (1, 1), (2, 1), (2, 2), (1, 1, 1)]:
        assert coproduct_exists(list(sizes), 3, literal=True) == \
            coproduct_exists(list(sizes), 3, literal=False)
        assert product_exists(list(sizes), 3, literal=True) == \
            product_exists(list(sizes), 3, literal=False)


def test_bounds_kappa2_all_smooth_reported():
    rep = smooth_proper_bounds(2, 3)
    assert rep.operational_smooth == [0, 1, 2, 3]
    assert rep.operational_proper == [0, 1, 2, 3]
    # the arithmetic side disagrees at finite scale and both are reported
    assert rep.arithmetic_smooth_bound == 1
    assert rep.agree_smooth is False


def test_codomain_engine_small():
    base = FinSetBase(100)
    scope = base.tier_scope(2)

    def probes_into(S):
        out = []
        for k in range(3):
            out.extend(base.hom(skeletal_set(k), S))
        return out

    for u in scope.all_arrows():
        r = codomain_classify(base, scope, u, probes_into)
        assert r["smooth"] and r["proper"]
        assert r["acyclic"] == base.is_iso(u)
