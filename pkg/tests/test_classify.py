import pytest

from fibercalc.fincat import (terminal_category, interval_category,
                              chain_category, poset_category, build_category,
                              identity_functor)
from fibercalc.fibred import (SelfIndexing, Scope, constant_indexed,
                              universe_calibration, constant_calibration,
                              make_calibration)
from fibercalc.classify import (Classifier, classify_map, beck_chevalley,
                                strict_check, is_exponentiable,
                                FactorizationSystem,
                                check_factorization_system,
                                wfs_pullback_criterion, regular_iff_sums,
                                MissingPullback)
from fibercalc.corpus.generators import (PowersetIndexed, powerset,
                                         subset_forgetful, epi_mono,
                                         represented_indexed)
from fibercalc.corpus.bases import FinSetBase, skeletal_set, FnArrow


def _m3():
    return poset_category("M3", ["0", "a", "b", "c", "1"],
                          lambda x, y: x == y or x == "0" or y == "1")


def test_bc_identity_trivial():
    ps, base, scope = powerset(2, ambient=4)
    idm = base.identity(skeletal_set(2))
    assert beck_chevalley(ps, idm, "left", scope).holds
    assert beck_chevalley(ps, idm, "right", scope).holds


def test_bc_powerset_both_sides_hold():
    ps, base, scope = powerset(2, ambient=4)
    for u in scope.all_arrows():
        assert beck_chevalley(ps, u, "left", scope).holds
        assert beck_chevalley(ps, u, "right", scope).holds


def test_m3_right_bc_fails_with_missing_adjoint():
    M3 = _m3()
    U = SelfIndexing(M3, strict=True)
    rep = beck_chevalley(U, "a<=1", "right")
    assert not rep.holds
    assert rep.witness[1] in ("missing_adjoint", "mate_not_invertible")


def test_m3_exponentiability_negative_and_identity():
    M3 = _m3()
    ok, wit = is_exponentiable(M3, "a<=1")
    assert not ok and wit is not None
    ok, _ = is_exponentiable(M3, M3.ident["1"])
    assert ok


def test_finset_exponentiable_via_certified_products():
    base = FinSetBase(16)
    scope = base.tier_scope(2)
    for u in scope.all_arrows():
        ok, _ = is_exponentiable(base, u, scope)
        assert ok


def test_classify_powerset_small():
    ps, base, scope = powerset(2, ambient=4)
    cl = Classifier(ps, scope, mode="nested")
    for u in scope.all_arrows():
        r = cl.classify(u)
        assert r.smooth and r.proper and r.localic
        assert r.acyclic == base.is_iso(u)
        assert not r.implication_violations()


def test_classify_missing_pullback_is_an_error():
    vee = poset_category("vee", ["x", "y", "z"],
                         lambda a, b: a == b or b == "z")
    U = SelfIndexing(vee, strict=True)
    with pytest.raises(MissingPullback):
        Classifier(U).classify("x<=z")


def test_represented_empty_category_row_small():
    empty = build_category("0", [])
    base = FinSetBase(4)
    scope = base.tier_scope(2)
    rep = represented_indexed(empty, base)
    cl = Classifier(rep, scope, mode="nested")
    for u in scope.all_arrows():
        r = cl.classify(u)
        assert r.smooth == u.is_surjective()
        assert r.proper == u.is_surjective()
        assert r.acyclic == u.is_surjective()
        assert r.localic == u.is_injective()


def test_strict_smooth_mono_calibration_is_injections():
    ps, base, scope = powerset(2, ambient=4)
    fg = subset_forgetful(ps)
    for u in scope.all_arrows():
        ok, _ = strict_check(ps, fg, u, "smooth", scope)
        assert ok == u.is_injective()


def test_strict_proper_every_map():
    ps, base, scope = powerset(2, ambient=4)
    fg = subset_forgetful(ps)
    for u in scope.all_arrows():
        ok, _ = strict_check(ps, fg, u, "proper", scope)
        assert ok


def test_kappa2_strict_smooth_equals_subsingleton_fibers():
    # fibers of size < 2 are exactly injections; cross-checked directly
    ps, base, scope = powerset(3, ambient=9)
    fg = subset_forgetful(ps)
    for u in scope.all_arrows():
        ok, _ = strict_check(ps, fg, u, "smooth", scope)
        subsingleton = all(len(u.fiber(y)) < 2 for y in u.cod)
        assert ok == subsingleton


def test_factorization_trivial_systems():
    C = chain_category(2)

    def factor_iso_all(a):
        return C.ident[C.src[a]], a

    FS = FactorizationSystem(C, C.is_iso, lambda a: True, factor_iso_all,
                             name="(iso,all)")
    rep = check_factorization_system(FS)
    assert rep.is_ofs and rep.is_modality

    def factor_all_iso(a):
        return a, C.ident[C.tgt[a]]

    FS2 = FactorizationSystem(C, lambda a: True, C.is_iso, factor_all_iso,
                              name="(all,iso)")
    rep2 = check_factorization_system(FS2)
    assert rep2.is_ofs and rep2.is_modality


def test_epi_mono_is_modality_small():
    FS, base, scope = epi_mono(2, ambient=4)
    rep = check_factorization_system(FS)
    assert rep.is_ofs and rep.is_modality
    for u in scope.all_arrows():
        ok, _ = wfs_pullback_criterion(FS, u)
        assert ok


def test_not_orthogonal_detected():
    C = chain_category(1)

    def factor(a):
        return a, C.ident[C.tgt[a]]

    # left class everything, right class everything: orthogonality fails
    FS = FactorizationSystem(C, lambda a: True, lambda a: True, factor)
    rep = check_factorization_system(FS)
    assert not rep.is_ofs
    assert any(f[0] == "orthogonality" for f in rep.failures)


def test_regular_iff_sums_examples():
    C = chain_category(2)
    assert regular_iff_sums(constant_calibration(C)).agree
    assert regular_iff_sums(universe_calibration(C)).agree
    gap = make_calibration(C, {"0<=0", "1<=1", "2<=2", "0<=1", "1<=2"},
                           name="gap")
    rep = regular_iff_sums(gap)
    assert not rep.regular and not rep.has_sums and rep.agree


def test_single_mode_equals_nested_small():
    ps, base, scope = powerset(2, ambient=4)
    nested = Classifier(ps, scope, mode="nested")
    single = Classifier(ps, scope, mode="single")
    for u in scope.all_arrows():
        rn, rs = nested.classify(u), single.classify(u)
        assert (rn.smooth, rn.proper, rn.acyclic, rn.localic) == \
            (rs.smooth, rs.proper, rs.acyclic, rs.localic)


def test_codomain_all_proper_when_all_exponentiable():
    # the square lattice is a Heyting algebra: every map exponentiable,
    # hence every map proper for its codomain indexed category
    B = poset_category("2x2", ["00", "01", "10", "11"],
                       lambda a, b: all(x <= y for x, y in zip(a, b)))
    U = SelfIndexing(B, strict=True)
    cl = Classifier(U, mode="nested")
    for u in B.arrows:
        ok, _ = is_exponentiable(B, u)
        assert ok
        assert cl.classify(u, with_localic=False).proper


def test_acyclic_memo_consistent_for_localic():
    ps, base, scope = powerset(2, ambient=4)
    cl = Classifier(ps, scope)
    first = cl.acyclic_set()
    _ = [cl.localic(u) for u in scope.all_arrows()[:4]]
    assert cl.acyclic_set() is first
