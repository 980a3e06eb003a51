"""Functor classes: fibration conditions, Conduche, comma factorization.

The composite-arrow functor [1] -> [2] is the standard non-exponentiable
functor: the factorization 0 -> 1 -> 2 of its image has no lift.  Every
functor factors through its comma as a fully faithful left adjoint followed
by a cocartesian fibration, or discretely as an initial functor followed by
a discrete opfibration.
"""

from fibercalc import (build_functor, interval_category, chain_category,
                       terminal_category, analyze_functor, is_conduche,
                       comma_factorization, groth_of_diagram, SetDiagram,
                       dof_fiber_diagram)

I, two, one = interval_category(), chain_category(2), terminal_category()

comp = build_functor("comp", I, two, {"0": "0", "1": "2"}, {"a": "0<=2"})
ok, w = is_conduche(comp)
print(f"[1] -> [2] (composite arrow) Conduche: {ok}, witness: "
      f"arrow {w[0]} has no lift of the factorization ({w[1]}, {w[2]})")

inc1 = build_functor("inc1", one, I, {"*": "1"})
r = analyze_functor(inc1)
print(f"inclusion of the endpoint: discrete opfibration={r.discrete_opfib}, "
      f"cocartesian={r.cocart_fib}, final={r.final}, initial={r.initial}")

for pick in ("0", "1"):
    f = build_functor(f"p{pick}", one, I, {"*": pick})
    cf = comma_factorization(f)
    print(f"comma factorization of pick{pick}: middle has "
          f"{len(cf.middle.objects)} objects; certificates {cf.certificates}")

# discrete opfibrations are Grothendieck constructions of their fibers
D = SetDiagram(I, {"0": {"a", "b"}, "1": {"x"}}, {"a": {"a": "x", "b": "x"}})
total, proj = groth_of_diagram(D)
back = dof_fiber_diagram(proj)
print(f"round trip through the Grothendieck construction: fibers "
      f"{[len(back.value[x]) for x in I.objects]} (started from "
      f"{[len(D.value[x]) for x in I.objects]})")
