"""Existential and universal quantifiers as adjoints to substitution.

For a function u between finite sets, the preimage map on subsets has a
least left adjoint (the exists-image) and a greatest right adjoint (the
forall-image); brute-force universal-property search recovers exactly the
classical formulas.
"""

from fibercalc.corpus import (FinSetBase, FnArrow, skeletal_set, least_image,
                              greatest_coimage, formula_image, formula_coimage)
from fibercalc.corpus.engines import _pre_table

base = FinSetBase(25)
X, Z = skeletal_set(3), skeletal_set(2)
u = FnArrow.of(X, Z, {0: 0, 1: 0, 2: 1})
print(f"u: {dict(u.graph)} between |X|=3 and |Z|=2")

pre = _pre_table(u)


def show(mask, n):
    return "{" + ",".join(str(i) for i in range(n) if (mask >> i) & 1) + "}"


for A in range(1 << 3):
    ex = least_image(u, A, pre)          # brute-force least B with A <= u^-1 B
    fa = greatest_coimage(u, A, pre)     # brute-force greatest B with u^-1 B <= A
    assert ex == formula_image(u, A)     # {j | exists a in A over j}
    assert fa == formula_coimage(u, A)   # {j | forall a over j, a in A}
    print(f"A={show(A, 3):10} exists-image={show(ex, 2):6} "
          f"forall-image={show(fa, 2):6}")

print("brute-force adjoints equal the exists/forall formulas on every subset")

# Beck-Chevalley: the mate over a genuine pullback square is invertible
from fibercalc.corpus import subsets_bc_square
v = FnArrow.of(skeletal_set(2), Z, {0: 0, 1: 1})
for side in ("left", "right"):
    ok, _ = subsets_bc_square(base, u, v, side)
    print(f"{side} mate over the square on (u, v): invertible = {ok}")
