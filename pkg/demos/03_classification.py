"""Classify base maps: smooth, proper, acyclic, localic.

The subset fibration over finite sets makes every map smooth and proper
(quantifiers always exist and commute with substitution over pullbacks),
the acyclic maps are the bijections, and every map is localic.  The
codomain fibration of the non-distributive lattice M3 shows the negative
side: maps into the top fail exponentiability, hence right Beck-Chevalley.
"""

from fibercalc import Classifier, SelfIndexing, poset_category, is_exponentiable
from fibercalc.corpus import powerset

ps, base, scope = powerset(2, ambient=4)
cl = Classifier(ps, scope, mode="nested")
print(f"subset fibration over {base.name}, scope: {scope.name}")
for u in scope.all_arrows():
    r = cl.classify(u)
    tag = "bijection" if r.acyclic else "        "
    print(f"  {str(dict(u.graph)):24} smooth={r.smooth} proper={r.proper} "
          f"acyclic={r.acyclic} localic={r.localic}  {tag}")

M3 = poset_category("M3", ["0", "a", "b", "c", "1"],
                    lambda x, y: x == y or x == "0" or y == "1")
U = SelfIndexing(M3, strict=True)
clm = Classifier(U, mode="nested")
print("\ncodomain fibration of M3 (0 < a,b,c < 1, non-distributive):")
for u in M3.arrows:
    if M3.is_identity(u):
        continue
    r = clm.classify(u, with_localic=False)
    exp, wit = is_exponentiable(M3, u)
    print(f"  {u}: smooth={r.smooth} right_bc={r.right_bc} exponentiable={exp}")
print("every map is smooth; the maps into the top are not exponentiable, "
      "so right Beck-Chevalley fails there")
