import pytest

from fibercalc.fincat import (terminal_category, interval_category,
                              chain_category, poset_category, build_functor,
                              identity_functor, constant_functor,
                              compose_functors, NatTransform, is_natural_iso,
                              FinFunctor)
from fibercalc.adjunction import (find_adjoint, NoAdjoint, universal_arrow,
                                  natural_iso_between, FunctorSquare, mate,
                                  Adjunction)
from fibercalc.catclasses import diagram_category, restriction_functor, \
    lan_pointwise
from fibercalc.corpus.generators import _mask_poset, PowersetIndexed
from fibercalc.corpus.bases import FinSetBase, skeletal_set, FnArrow


def test_identity_adjunction():
    I = interval_category()
    adj = find_adjoint(identity_functor(I), "left")
    assert isinstance(adj, Adjunction)
    assert all(I.is_identity(adj.unit.at(x)) for x in I.objects)


def test_adjoints_of_terminal_functor_pick_extremal_objects():
    I = interval_category()
    bang = constant_functor(I, terminal_category(), "*")
    L = find_adjoint(bang, "left")
    R = find_adjoint(bang, "right")
    assert L.left.ob["*"] == "0"
    assert R.right.ob["*"] == "1"


def test_no_adjoint_witness_matches_comma_criterion():
    one, I = terminal_category(), interval_category()
    G = build_functor("pick1", one, I, {"*": "1"})
    rep = find_adjoint(G, "right")
    assert isinstance(rep, NoAdjoint) and rep.at_object == "0"
    # the witness condition is exactly the universal-arrow search
    assert universal_arrow(G, "0", "right") is None
    assert universal_arrow(G, "1", "right") is not None


def test_left_adjoint_of_restriction_vs_pointwise_kan_oracle():
    one, I = terminal_category(), interval_category()
    u = build_functor("p1", one, I, {"*": "1"})
    dI = diagram_category(I, 2)
    d1 = diagram_category(one, 2)
    res = restriction_functor(u, dI, d1)
    adj = find_adjoint(res, "left")
    assert isinstance(adj, Adjunction)
    for key in d1[0].objects:
        F = d1[1][key]
        lan_key = adj.left.ob[key]
        LanF = dI[1][lan_key]
        for d in I.objects:
            col, _ = lan_pointwise(u, F, d)
            assert len(LanF.value[d]) == len(col)


def test_adjoint_uniqueness_up_to_natural_iso():
    I = interval_category()
    bang = constant_functor(I, terminal_category(), "*")
    L1 = find_adjoint(bang, "left")
    L2 = find_adjoint(bang, "left")
    assert natural_iso_between(L1.left, L2.left) is not None


def test_mate_of_identity_square_invertible():
    I = interval_category()
    bang = constant_functor(I, terminal_category(), "*")
    sq = FunctorSquare(bang, identity_functor(terminal_category()),
                       identity_functor(I), bang)
    adj = find_adjoint(bang, "left")
    rep = mate(sq, adj, adj, "left")
    assert rep.invertible


def _preimage_functor(base, u):
    ps = PowersetIndexed(base)
    return ps.transition(u)


def test_powerset_mate_over_set_pullback_invertible():
    # Table row "subsets (kappa=2)": cartesian squares have invertible mates
    base = FinSetBase(4)
    X, Z, W = skeletal_set(2), skeletal_set(1), skeletal_set(2)
    u = FnArrow.of(X, Z, {0: 0, 1: 0})
    v = FnArrow.of(W, Z, {0: 0, 1: 0})
    sq = base.pullback(u, v)
    ustar = _preimage_functor(base, u)
    vstar = _preimage_functor(base, v)
    vbarstar = _preimage_functor(base, sq.to_src_f)
    ubarstar = _preimage_functor(base, sq.to_src_g)
    square = FunctorSquare(ustar, vbarstar, vstar, ubarstar)
    a1 = find_adjoint(ustar, "left")
    a2 = find_adjoint(ubarstar, "left")
    rep = mate(square, a1, a2, "left")
    assert rep.invertible
    rep_r = mate(square, find_adjoint(ustar, "right"),
                 find_adjoint(ubarstar, "right"), "right")
    assert rep_r.invertible


def test_non_cartesian_square_mate_fails_with_component():
    # fake corner = the point, so the exists-image cannot commute
    base = FinSetBase(4)
    X, Z, P = skeletal_set(2), skeletal_set(1), skeletal_set(1)
    u = FnArrow.of(X, Z, {0: 0, 1: 0})
    idZ = base.identity(Z)
    vbar = FnArrow.of(P, X, {0: 0})     # not a pullback corner of (u, id)
    ubar = FnArrow.of(P, Z, {0: 0})
    ustar = _preimage_functor(base, u)
    vstar = _preimage_functor(base, idZ)
    vbarstar = _preimage_functor(base, vbar)
    ubarstar = _preimage_functor(base, ubar)
    square = FunctorSquare(ustar, vbarstar, vstar, ubarstar)
    rep = mate(square, find_adjoint(ustar, "left"),
               find_adjoint(ubarstar, "left"), "left")
    assert not rep.invertible
    assert rep.failing_component is not None


def test_is_natural_iso_cases():
    one, I = terminal_category(), interval_category()
    c0 = constant_functor(one, I, "0")
    c1 = constant_functor(one, I, "1")
    t = NatTransform("t", c0, c1, {"*": "a"})
    assert is_natural_iso(t) == (False, "*")
    # unit of an adjoint equivalence is a natural iso
    idf = identity_functor(I)
    adj = find_adjoint(idf, "left")
    ok, _ = is_natural_iso(adj.unit)
    assert ok


def test_mate_pasting_on_poset_base():
    # deterministic instance of the pasting law in a strict setting
    from fibercalc.fibred import SelfIndexing
    from fibercalc.classify import square_mate_component
    B = poset_category("2x2", ["00", "01", "10", "11"],
                       lambda a, b: all(x <= y for x, y in zip(a, b)))
    U = SelfIndexing(B, strict=True)
    u = "01<=11"
    v = "10<=11"
    vp = "00<=10"
    sq_outer = B.pullback(u, v)
    sq_inner = B.pullback(sq_outer.to_src_g, vp)
    sq_big = B.pullback(u, B.compose(v, vp))
    assert sq_big.apex == sq_inner.apex
    FX = U.fiber("01")
    FV = U.fiber("00")
    for b in FX.objects:
        big, _, _ = square_mate_component(U, sq_big, "left", b)
        outer, _, _ = square_mate_component(U, sq_outer, "left", b)
        inner_at = U.transition(sq_outer.to_src_f).ob[b]
        inner, _, _ = square_mate_component(U, sq_inner, "left", inner_at)
        composite = FV.comp[(U.transition(vp).ar[outer], inner)]
        assert big == composite
