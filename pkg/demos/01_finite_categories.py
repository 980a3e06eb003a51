"""Build finite categories, take commas, compute limits and pullbacks.

Everything is validated on construction: composition tables must be total,
associative and unital, and every universal property returned comes with an
exhaustive certificate.
"""

from fibercalc import (build_category, build_functor, comma, identity_functor,
                       interval_category, terminal_category, poset_category,
                       parallel_pair_category, SetDiagram, set_limit_colimit,
                       pullback, extremal_object, NoPullback)

one = terminal_category()
I = interval_category()
print(f"the walking arrow: {I}")
print(f"initial object: {extremal_object(I, 'initial').object}, "
      f"terminal: {extremal_object(I, 'terminal').object}")

# comma categories: the slice of [1] under each endpoint
for pick in ("0", "1"):
    F = build_functor(f"pick{pick}", one, I, {"*": pick})
    c, _, _ = comma(F, identity_functor(I))
    print(f"comma (pick{pick} / id): {len(c.objects)} objects, "
          f"{len([a for a in c.arrows if not c.is_identity(a)])} non-identity arrows")

# a coequalizer of set maps, computed by the zigzag quotient
pair = parallel_pair_category()
D = SetDiagram(pair, {"0": {"x", "y"}, "1": {"0", "1"}},
               {"f": {"x": "0", "y": "0"}, "g": {"x": "1", "y": "0"}})
col, _ = set_limit_colimit(D, "colimit")
print(f"coequalizer of two maps {{x,y}} -> {{0,1}}: {len(col)} class(es)")

# pullbacks: present in a lattice, absent in the vee
square = poset_category("2x2", ["00", "01", "10", "11"],
                        lambda a, b: all(x <= y for x, y in zip(a, b)))
sq = pullback(square, "01<=11", "10<=11")
print(f"pullback of the two coatoms of 2x2: apex {sq.apex}")

vee = poset_category("vee", ["x", "y", "z"], lambda a, b: a == b or b == "z")
try:
    pullback(vee, "x<=z", "y<=z")
except NoPullback as e:
    print(f"the vee has no pullback: {e}")
