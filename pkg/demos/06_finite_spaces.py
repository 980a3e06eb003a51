"""Open and proper maps of finite T0 spaces through the open-set fibration.

A finite T0 space is its specialization poset; opens are the up-sets.  A
map is smooth for the open-set fibration exactly when it is an open map,
and proper exactly when it is universally closed; both sides are computed
by independent routes and compared on every map between small spaces.
"""

from fibercalc.corpus import (finite_space_setup, opens_classify,
                              open_map_oracle, universally_closed_oracle,
                              sierpinski, finite_space_row)

S = sierpinski()
print(f"Sierpinski space: {S}, opens: {len(S.up_masks())}")

opens_idx, base, scope, tier = finite_space_setup(3, ambient=9)
print(f"tier: {len(tier)} spaces up to iso with <= 3 points")

shown = 0
for X in tier:
    for Z in tier:
        for u in base.hom(X, Z):
            r = opens_classify(base, scope, u)
            assert r["smooth"] == open_map_oracle(u)
            assert r["proper"] == universally_closed_oracle(base, scope, u)
            if shown < 6 and len(X) == 2 and len(Z) == 2:
                print(f"  {dict(u.graph)}: smooth/open={r['smooth']} "
                      f"proper/universally-closed={r['proper']}")
                shown += 1
print("engine verdicts agree with the topological oracles on every map")

row = finite_space_row(2, ambient=4)
print(f"vectorized sweep at 2 points: {row['maps']} maps, "
      f"mismatches: {len(row['mismatch_open']) + len(row['mismatch_closed'])}")
