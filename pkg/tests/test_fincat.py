import itertools
import pytest

from fibercalc.fincat import (
    FinCategory, SetDiagram, build_category, build_functor, comma,
    set_limit_colimit, pullback, extremal_object, is_equivalence,
    quasi_inverse, is_connected, terminal_category, interval_category,
    chain_category, discrete_category, parallel_pair_category,
    poset_category, product_category, identity_functor, constant_functor,
    compose_functors, verify_pullback_square, verify_colimit_cocone,
    verify_limit_cone, MissingComposite, NonAssociative,
    IdentityLawViolation, DanglingEndpoint, NotFunctorial, NoPullback,
    cat_pullback)


def test_build_terminal_category():
    one = build_category("1", ["*"])
    assert len(one.objects) == 1 and len(one.arrows) == 1


def test_build_interval():
    I = build_category("[1]", ["0", "1"], [("a", "0", "1")])
    assert len(I.arrows) == 3
    assert I.comp[(I.ident["1"], "a")] == "a"


def test_wrong_composite_target_is_dangling():
    # g.f asserted with the wrong target
    with pytest.raises(DanglingEndpoint):
        build_category("bad", ["x", "y", "z"],
                       [("f", "x", "y"), ("g", "y", "z"), ("h", "x", "y")],
                       {("g", "f"): "h"})


def test_missing_composite():
    with pytest.raises(MissingComposite):
        build_category("bad", ["x", "y", "z"],
                       [("f", "x", "y"), ("g", "y", "z")])


def test_non_associative():
    # one object, arrows {1, s, t} with a deliberately broken table
    comp = {("s", "s"): "t", ("s", "t"): "1_x", ("t", "s"): "s",
            ("t", "t"): "t"}
    with pytest.raises(NonAssociative):
        build_category("bad", ["x"], [("s", "x", "x"), ("t", "x", "x")], comp)


def test_identity_law_violation():
    comp = {("s", "s"): "s"}
    cat = build_category("ok", ["x"], [("s", "x", "x")], comp)
    with pytest.raises(IdentityLawViolation):
        FinCategory("bad", cat.objects, cat.arrows, cat.src, cat.tgt,
                    {"x": "s"}, cat.comp)


def test_associativity_holds_everywhere():
    C = chain_category(3)
    for f in C.arrows:
        for g in C.hom_from(C.tgt[f]):
            for h in C.hom_from(C.tgt[g]):
                assert C.comp[(h, C.comp[(g, f)])] == \
                    C.comp[(C.comp[(h, g)], f)]


def test_functor_identity_and_constant():
    I = interval_category()
    idf = identity_functor(I)
    assert idf.ob == {"0": "0", "1": "1"}
    bang = constant_functor(I, terminal_category(), "*")
    assert bang.ar["a"] == "1_*"


def test_functor_swap_rejected():
    I = interval_category()
    with pytest.raises(NotFunctorial):
        build_functor("swap", I, I, {"0": "1", "1": "0"}, {"a": "a"})


def test_comma_point_over_one():
    one, I = terminal_category(), interval_category()
    c, _, _ = comma(build_functor("p1", one, I, {"*": "1"}),
                    identity_functor(I))
    assert len(c.objects) == 1


def test_comma_point_under_zero():
    # oracle: arrows out of 0 in [1] are id_0 and a, so two objects
    one, I = terminal_category(), interval_category()
    c, pa, pb = comma(build_functor("p0", one, I, {"*": "0"}),
                      identity_functor(I))
    assert len(c.objects) == 2
    non_id = [a for a in c.arrows if not c.is_identity(a)]
    assert len(non_id) == 1


def test_comma_identity_terminal():
    one = terminal_category()
    c, _, _ = comma(identity_functor(one), identity_functor(one))
    assert len(c.objects) == 1 and len(c.arrows) == 1


def _union_find_colimit(D):
    """Independent oracle: union-find over the element graph."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    S = D.shape
    for x in S.objects:
        for e in D.value[x]:
            parent[(x, e)] = (x, e)
    for a in S.arrows:
        for e, e2 in D.action[a].items():
            union((S.src[a], e), (S.tgt[a], e2))
    return len({find(t) for t in parent})


def test_colimit_binary_coproduct():
    D = SetDiagram(discrete_category(["i", "j"]),
                   {"i": {"a"}, "j": {"b"}}, {})
    col, _ = set_limit_colimit(D, "colimit")
    assert len(col) == 2


def test_limit_binary_product():
    D = SetDiagram(discrete_category(["i", "j"]),
                   {"i": {"a", "b"}, "j": {"x", "y", "z"}}, {})
    lim, _ = set_limit_colimit(D, "limit")
    assert len(lim) == 6


def test_coequalizer_vs_union_find_oracle():
    pair = parallel_pair_category()
    D = SetDiagram(pair, {"0": {"x", "y"}, "1": {"0", "1"}},
                   {"f": {"x": "0", "y": "0"}, "g": {"x": "1", "y": "0"}})
    col, cocone = set_limit_colimit(D, "colimit")
    assert len(col) == _union_find_colimit(D)


def test_random_diagrams_vs_union_find():
    import random
    rng = random.Random(5)
    shapes = [parallel_pair_category(), interval_category(), chain_category(2)]
    for i in range(40):
        S = rng.choice(shapes)
        value = {x: frozenset(range(rng.randrange(4))) for x in S.objects}
        action = {}
        feasible = True
        for a in S.arrows:
            if S.is_identity(a):
                continue
            dom, cod = value[S.src[a]], value[S.tgt[a]]
            if dom and not cod:
                feasible = False
                break
            action[a] = {e: rng.choice(sorted(cod)) for e in dom}
        if not feasible:
            continue
        try:
            D = SetDiagram(S, value, action)
        except NotFunctorial:
            continue   # random actions need not respect composites
        col, _ = set_limit_colimit(D, "colimit")
        assert len(col) == _union_find_colimit(D)


def test_empty_diagram_degenerate_cases():
    empty = build_category("0", [])
    D = SetDiagram(empty, {}, {})
    col, _ = set_limit_colimit(D, "colimit")
    lim, _ = set_limit_colimit(D, "limit")
    assert len(col) == 0 and len(lim) == 1


def test_colimit_universal_certificate():
    pair = parallel_pair_category()
    D = SetDiagram(pair, {"0": {"x"}, "1": {"0", "1"}},
                   {"f": {"x": "0"}, "g": {"x": "1"}})
    col, cocone = set_limit_colimit(D, "colimit")
    # competitor: the one-point cocone always factors uniquely
    comp = {x: {e: "pt" for e in D.value[x]} for x in pair.objects}
    assert verify_colimit_cocone(D, col, cocone, {"pt"}, comp)


def test_limit_universal_certificate():
    D = SetDiagram(discrete_category(["i", "j"]),
                   {"i": {"a", "b"}, "j": {"x"}}, {})
    lim, cone = set_limit_colimit(D, "limit")
    comp = {"i": {"t": "a"}, "j": {"t": "x"}}
    assert verify_limit_cone(D, lim, cone, {"t"}, comp)


def test_pullback_identity_cospan():
    I = interval_category()
    sq = pullback(I, I.ident["1"], I.ident["1"])
    assert sq.apex == "1"


def test_pullback_elementwise_oracle():
    # skeletal finite sets <= 2: corner size equals the pair-count oracle
    from fibercalc.corpus.generators import finset_universe
    fu = finset_universe(2)
    f = ("fn", 2, 2, (0, 1))    # identity on 2
    g = ("fn", 1, 2, (0,))
    sq = pullback(fu, f, g)
    fv, gv = f[3], g[3]
    oracle = len([(a, b) for a in range(2) for b in range(1)
                  if fv[a] == gv[b]])
    assert sq.apex == oracle


def test_pullback_absent_in_vee():
    vee = poset_category("vee", ["x", "y", "z"],
                         lambda a, b: a == b or b == "z")
    with pytest.raises(NoPullback):
        pullback(vee, "x<=z", "y<=z")


def test_pullback_pasting_cancellation():
    # two certified squares in a lattice paste to a certified square
    B = poset_category("2x2", ["00", "01", "10", "11"],
                       lambda a, b: all(x <= y for x, y in zip(a, b)))
    f = "01<=11"
    g = "10<=11"
    inner = pullback(B, f, g)              # meet: 00
    h = "00<=10"
    left = pullback(B, inner.to_src_g, h)
    assert verify_pullback_square(
        B, f, B.compose(g, h), left.apex,
        B.compose(inner.to_src_f, left.to_src_f), left.to_src_g)


def test_pullback_choice_deterministic():
    B = chain_category(2)
    s1 = pullback(B, "0<=2", "1<=2")
    s2 = pullback(B, "0<=2", "1<=2")
    assert s1 is s2 and s1.apex == "0"


def test_extremal_objects():
    one = terminal_category()
    assert extremal_object(one, "initial").object == "*"
    assert extremal_object(one, "terminal").object == "*"
    I = interval_category()
    assert extremal_object(I, "initial").object == "0"
    assert extremal_object(I, "terminal").object == "1"
    d2 = discrete_category(["a", "b"])
    assert not extremal_object(d2, "initial").found
    assert not extremal_object(d2, "terminal").found
    assert extremal_object(d2, "initial").witness is not None


def test_equivalence_identity_and_negative():
    I = interval_category()
    assert is_equivalence(identity_functor(I))
    one = terminal_category()
    rep = is_equivalence(build_functor("p0", one, I, {"*": "0"}))
    assert not rep and rep.witness == "1"


def test_equivalence_skeleton_inclusion_and_quasi_inverse():
    C2 = build_category("isopair", ["u", "v"],
                        [("i", "u", "v"), ("j", "v", "u")],
                        {("j", "i"): "1_u", ("i", "j"): "1_v"})
    inc = build_functor("inc", terminal_category(), C2, {"*": "u"})
    assert is_equivalence(inc)
    qi = quasi_inverse(inc)
    assert is_equivalence(qi)


def test_connectivity():
    assert is_connected(terminal_category())
    assert not is_connected(build_category("0", []))
    assert not is_connected(discrete_category(["a", "b"]))
    assert is_connected(parallel_pair_category())


def test_product_category():
    I = interval_category()
    sq = product_category([I, I])
    assert len(sq.objects) == 4 and len(sq.arrows) == 9


def test_cat_pullback_projections():
    I = interval_category()
    one = terminal_category()
    P, pa, pb = cat_pullback(build_functor("p1", one, I, {"*": "1"}),
                             identity_functor(I))
    assert len(P.objects) == 1 and pa.ob[P.objects[0]] == "*"


def test_category_value_semantics():
    a = chain_category(2)
    b = chain_category(2)
    assert a == b and hash(a) == hash(b)
    assert a != interval_category()
