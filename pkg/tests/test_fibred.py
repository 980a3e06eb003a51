import pytest

from fibercalc.fincat import (terminal_category, interval_category,
                              chain_category, poset_category, build_category,
                              build_functor, identity_functor, SetDiagram,
                              NoPullback)
from fibercalc.fibred import (TabularIndexed, constant_indexed, grothendieck,
                              base_change, fiber_of_total, make_calibration,
                              constant_calibration, universe_calibration,
                              NotStable, NotPointed, slice_category,
                              pullback_functor, SelfIndexing, fam_construction,
                              delta, CalibrationIndexed, Scope)
from fibercalc.corpus.generators import PowersetIndexed, _mask_poset
from fibercalc.corpus.bases import FinSetBase, skeletal_set


def _subsets_on_interval():
    I = interval_category()
    f1 = poset_category("2^1", ["e", "p"],
                        lambda a, b: a == b or (a == "e" and b == "p"))
    f0 = poset_category("2^0", ["e"], lambda a, b: True)
    t = build_functor("a*", f1, f0, {"e": "e", "p": "e"},
                      {"e<=e": "e<=e", "p<=p": "e<=e", "e<=p": "e<=e"})
    return TabularIndexed("ps", I, {"0": f0, "1": f1},
                          {"1_0": identity_functor(f0),
                           "1_1": identity_functor(f1), "a": t})


def test_constant_indexed_total_is_base():
    I = interval_category()
    fib = grothendieck(constant_indexed(I, terminal_category()))
    assert len(fib.total.objects) == len(I.objects)
    assert len(fib.total.arrows) == len(I.arrows)


def test_powerset_total_counting_oracle():
    # subsets over a two-point set: total objects = sum of 2^|b|
    base = FinSetBase(4)
    ps = PowersetIndexed(base)
    S2, S1 = skeletal_set(2), skeletal_set(1)
    B = build_category("B", ["s1", "s2"], [("u", "s1", "s2")])
    f = base.hom(S1, S2)[0]
    X = TabularIndexed("ps2", B,
                       {"s1": ps.fiber(S1), "s2": ps.fiber(S2)},
                       {"1_s1": identity_functor(ps.fiber(S1)),
                        "1_s2": identity_functor(ps.fiber(S2)),
                        "u": ps.transition(f)})
    fib = grothendieck(X)
    assert len(fib.total.objects) == 2 ** 1 + 2 ** 2


def test_groth_of_set_valued_functor_is_discrete_opfibration():
    from fibercalc.catclasses import discrete_fibration_check
    I = interval_category()
    D = SetDiagram(I, {"0": {"a"}, "1": {"x", "y"}}, {"a": {"a": "x"}})
    from fibercalc.catclasses import groth_of_diagram
    total, proj = groth_of_diagram(D)
    assert len(total.objects) == 3
    ok, _ = discrete_fibration_check(proj, "co")
    assert ok


def test_base_change_identity_and_stored_transition():
    X = _subsets_on_interval()
    fib = grothendieck(X)
    bc_id = base_change(fib, "1_1")
    assert all(bc_id.ob[o] == o for o in bc_id.dom.objects)
    bc = base_change(fib, "a")
    t = X.transition("a")
    for o in bc.dom.objects:
        assert bc.ob[o][1] == t.ob[o[1]]


def test_base_change_respects_composition_strictly():
    C = chain_category(2)
    f2 = _mask_poset(1)
    X = constant_indexed(C, f2)
    fib = grothendieck(X)
    u, v = "0<=1", "1<=2"
    vu = C.comp[(v, u)]
    bc_u, bc_v, bc_vu = base_change(fib, u), base_change(fib, v), \
        base_change(fib, vu)
    for o in bc_v.dom.objects:
        assert bc_u.ob[bc_v.ob[o]] == bc_vu.ob[o]


def test_calibration_flags():
    C = chain_category(2)
    isos = constant_calibration(C)
    assert isos.pointed and isos.regular
    univ = universe_calibration(C)
    assert univ.pointed and univ.regular


def test_calibration_injections_in_finite_sets():
    base = FinSetBase(4)
    scope = base.tier_scope(2)
    cal = make_calibration(base, lambda f: f.is_injective(), scope=scope,
                           name="monos")
    assert cal.pointed and cal.regular


def test_calibration_not_stable_witness():
    C = chain_category(2)
    with pytest.raises(NotStable):
        make_calibration(C, {"0<=1"}, name="bad")


def test_fam_of_constant_calibration_is_identity():
    # fiber of Fam over the iso calibration matches the plain fiber
    X = _subsets_on_interval()
    isos = constant_calibration(X.base)
    fam = fam_construction(isos, X)
    for I in X.base.objects:
        FI = fam.fiber(I)
        CI = X.fiber(I)
        assert len(FI.objects) == len(CI.objects)
        assert len(FI.arrows) == len(CI.arrows)


def test_fam_of_universe_terminal_is_slice():
    C = chain_category(2)
    T = constant_indexed(C, terminal_category())
    fam = fam_construction(universe_calibration(C), T)
    for I in C.objects:
        assert len(fam.fiber(I).objects) == len(slice_category(C, I).objects)


def test_delta_requires_pointed():
    C = chain_category(2)
    members = frozenset(a for a in C.arrows if a == "0<=0")
    # not stable/pointed: isos of 1 and 2 are missing
    with pytest.raises((NotStable, NotPointed)):
        U = make_calibration(C, members, name="bad")
        delta(U, constant_indexed(C, terminal_category()), "0")


def test_delta_sends_object_to_identity_pair():
    C = chain_category(2)
    X = constant_indexed(C, _mask_poset(1))
    U = universe_calibration(C)
    fam = fam_construction(U, X)
    d = delta(U, X, "1", fam)
    for x in X.fiber("1").objects:
        m, y = d.ob[x]
        assert C.is_identity(m) and y == x


def test_self_indexing_transitions_strict_on_posets():
    B = poset_category("2x2", ["00", "01", "10", "11"],
                       lambda a, b: all(x <= y for x, y in zip(a, b)))
    U = SelfIndexing(B, strict=True)
    u, v = "00<=01", "01<=11"
    vu = B.comp[(v, u)]
    t_u, t_v, t_vu = U.transition(u), U.transition(v), U.transition(vu)
    for t in t_vu.dom.objects:
        assert t_u.ob[t_v.ob[t]] == t_vu.ob[t]


def test_grothendieck_lift_certificates():
    # certification is on by default; a valid instance passes
    X = _subsets_on_interval()
    fib = grothendieck(X, certify=True)
    assert fib.cleavage


def test_calibration_indexed_fibers_are_slice_subcategories():
    B = chain_category(2)
    U = universe_calibration(B)
    CU = CalibrationIndexed(U)
    for I in B.objects:
        assert len(CU.fiber(I).objects) == len(slice_category(B, I).objects)
