"""Strict smoothness and the (surjection, injection) modality.

For the calibration of monomorphisms over finite sets: every map is smooth
(the image factorization is stable under pullback), the strictly smooth
maps are exactly the injections, and every map is strictly proper.
"""

from fibercalc import check_factorization_system, strict_check
from fibercalc.corpus import powerset, subset_forgetful, epi_mono

FS, base, scope = epi_mono(3, ambient=9)
rep = check_factorization_system(FS)
print(f"(epi, mono) on {base.name}: orthogonal factorization system = "
      f"{rep.is_ofs}, modality = {rep.is_modality}")

ps, base2, scope2 = powerset(3, ambient=9)
fg = subset_forgetful(ps)
rows = []
for u in scope2.all_arrows():
    ss, _ = strict_check(ps, fg, u, "smooth", scope2)
    sp, _ = strict_check(ps, fg, u, "proper", scope2)
    rows.append((u, ss, sp))
n_inj = sum(1 for u, _, _ in rows if u.is_injective())
n_ss = sum(1 for _, ss, _ in rows if ss)
print(f"strictly smooth maps: {n_ss} of {len(rows)} "
      f"(injections: {n_inj}) -> equal: {n_ss == n_inj}")
assert all(ss == u.is_injective() for u, ss, _ in rows)
print(f"strictly proper maps: {sum(1 for _, _, sp in rows if sp)} of "
      f"{len(rows)} (every map, since the factorization is a modality)")
