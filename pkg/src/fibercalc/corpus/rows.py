"""Golden verification rows: reproduce the example tables at desk scale.

Each row builds its example, runs the relevant classifiers and the
independent oracles, and emits a report document with per-arrow diffs and a
pass flag.  Row identifiers and their parameters are the CLI surface.
"""

from __future__ import annotations

from ..fincat import FinCatError, poset_category
from ..fibred import SelfIndexing
from ..classify import (Classifier, is_exponentiable, strict_check,
                        check_factorization_system, MissingAdjoint)
from .bases import FinSetBase, skeletal_set
from .generators import (powerset, subset_forgetful, kappa_small, epi_mono,
                         represented_indexed)
from .engines import (subsets_smooth_proper, codomain_classify,
                      verify_quantifier_formulas, verify_quantifier_mates_bulk)
from .spacerow import finite_space_row
from .dofrow import dof_strict_smooth_row, standard_probes, all_functors
from .bounds import smooth_proper_bounds


class RowNotFiniteScale(FinCatError):
    pass


def row_subsets_k2(bound=3, ambient=None):
    """Subset fibration: all smooth, all proper, acyclic = bijections,
    localic = all maps, via the generic classifier."""
    ps, base, scope = powerset(bound, ambient)
    cl = Classifier(ps, scope, mode="single")
    arrows = scope.all_arrows()
    diffs = []
    acyclic, bijections = [], []
    for u in arrows:
        r = cl.classify(u)
        if not r.smooth:
            diffs.append({"arrow": repr(u), "column": "smooth",
                          "expected": True, "got": False})
        if not r.proper:
            diffs.append({"arrow": repr(u), "column": "proper",
                          "expected": True, "got": False})
        if not r.localic:
            diffs.append({"arrow": repr(u), "column": "localic",
                          "expected": True, "got": False})
        if r.acyclic:
            acyclic.append(u)
        if base.is_iso(u):
            bijections.append(u)
    if sorted(map(repr, acyclic)) != sorted(map(repr, bijections)):
        diffs.append({"column": "acyclic",
                      "expected": "bijections",
                      "got": sorted(map(repr, acyclic))})
    return {"row": "subsets-k2", "ambient": base.name, "scope": scope.name,
            "maps": len(arrows),
            "columns": {"smooth": "all maps", "proper": "all maps",
                        "acyclic": f"bijections ({len(acyclic)})",
                        "localic": "all maps"},
            "diffs": diffs, "passed": not diffs}


def row_codomain_finset(bound=3, guard=1000, cert_bound=2):
    """Codomain fibration over finite sets: all smooth, all proper with
    certified products, acyclic = isomorphisms.

    Adjoint values use the canonical formulas (composition / sections);
    sum values are certified initial against tier competitors, products by
    hom-counting at ``bound`` and by full terminality at ``cert_bound``.
    """
    base = FinSetBase(guard)
    scope = base.tier_scope(bound)

    def probes_into(S):
        out = []
        for k in range(bound + 1):
            out.extend(base.hom(skeletal_set(k), S))
        return out

    arrows = scope.all_arrows()
    diffs = []
    acyclic, isos = [], []
    for u in arrows:
        r = codomain_classify(base, scope, u, probes_into)
        for col in ("smooth", "proper"):
            if not r[col]:
                diffs.append({"arrow": repr(u), "column": col,
                              "expected": True, "got": r[col],
                              "witness": repr(r.get("witness"))})
        if r.get("acyclic"):
            acyclic.append(u)
        if base.is_iso(u):
            isos.append(u)
    if sorted(map(repr, acyclic)) != sorted(map(repr, isos)):
        diffs.append({"column": "acyclic", "expected": "isomorphisms",
                      "got": sorted(map(repr, acyclic))})
    # full-certificate subsweep at the certification tier
    base2 = FinSetBase(guard)
    scope2 = base2.tier_scope(cert_bound)

    def probes2(S):
        out = []
        for k in range(cert_bound + 1):
            out.extend(base2.hom(skeletal_set(k), S))
        return out

    cert_fails = []
    for u in scope2.all_arrows():
        from ..classify import _is_terminal_product
        for t in probes2(u.dom):
            pi, ev = base2.dependent_product(u, t)
            if not _is_terminal_product(base2, u, t, pi, ev, probes2(u.cod)):
                cert_fails.append((repr(u), repr(t)))
    if cert_fails:
        diffs.append({"column": "product_certificates", "got": cert_fails})
    return {"row": "codomain-finset", "ambient": base.name,
            "scope": scope.name, "maps": len(arrows),
            "product_certificates":
                f"hom-counting at tier {bound}, full terminality at tier "
                f"{cert_bound}",
            "columns": {"smooth": "all maps",
                        "proper": "all maps (exponentiability certified)",
                        "acyclic": f"isomorphisms ({len(acyclic)})"},
            "diffs": diffs, "passed": not diffs}


def row_codomain_m3():
    """The non-distributive five-element lattice: smooth = all maps, but at
    least one map fails exponentiability and right Beck-Chevalley."""
    M3 = poset_category("M3", ["0", "a", "b", "c", "1"],
                        lambda x, y: x == y or x == "0" or y == "1")
    U = SelfIndexing(M3, strict=True)
    cl = Classifier(U, mode="nested")
    diffs = []
    failing_exp = []
    for u in M3.arrows:
        r = cl.classify(u)
        if not r.smooth:
            diffs.append({"arrow": u, "column": "smooth", "expected": True})
        ok, _ = is_exponentiable(M3, u)
        if not ok:
            failing_exp.append(u)
            if r.right_bc:
                diffs.append({"arrow": u, "column": "right_bc",
                              "expected": False, "got": True})
    if not failing_exp:
        diffs.append({"column": "exponentiability",
                      "expected": "at least one failure", "got": "none"})
    acyclic = [u for u in M3.arrows if cl.acyclic(u)[0]]
    isos = [u for u in M3.arrows if M3.is_iso(u)]
    if sorted(acyclic) != sorted(isos):
        diffs.append({"column": "acyclic", "expected": "isomorphisms",
                      "got": acyclic})
    return {"row": "codomain-m3", "ambient": "M3", "scope": "all arrows",
            "failing_exponentiability": failing_exp,
            "diffs": diffs, "passed": not diffs}


def row_epi_mono(bound=4, ambient=None):
    """(surjection, injection) is a modality; the mono calibration has every
    map smooth, strict smooth = injections, every map strictly proper."""
    FS, base, scope = epi_mono(bound, ambient)
    rep = check_factorization_system(FS)
    diffs = []
    if not rep.is_ofs or not rep.is_modality:
        diffs.append({"column": "factorization_system",
                      "expected": "ofs + modality",
                      "got": rep.failures[:5]})
    ps, base2, scope2 = powerset(bound, ambient)
    fg = subset_forgetful(ps)
    for u in scope2.all_arrows():
        sm, pr, wit = subsets_smooth_proper(base2, scope2, u, certify=True)
        if not sm:
            diffs.append({"arrow": repr(u), "column": "smooth",
                          "expected": True, "witness": repr(wit)})
        ss, _ = strict_check(ps, fg, u, "smooth", scope2)
        if ss != u.is_injective():
            diffs.append({"arrow": repr(u), "column": "strict_smooth",
                          "expected": u.is_injective(), "got": ss})
        try:
            sp, w = strict_check(ps, fg, u, "proper", scope2)
        except MissingAdjoint:
            sp, w = False, "missing adjoint"
        if not sp:
            diffs.append({"arrow": repr(u), "column": "strict_proper",
                          "expected": True, "got": repr(w)})
    return {"row": "epi-mono-modality", "ambient": base.name,
            "scope": scope.name,
            "factorization": {"is_ofs": rep.is_ofs,
                              "is_modality": rep.is_modality},
            "diffs": diffs, "passed": not diffs}


def row_kappa_small_injections(bound=4):
    """fibers < 2 means subsingleton fibers, i.e. exactly the injections."""
    cal, base, scope = kappa_small(bound, 2)
    diffs = []
    for u in scope.all_arrows():
        if (u in cal) != u.is_injective():
            diffs.append({"arrow": repr(u), "member": u in cal,
                          "injective": u.is_injective()})
    return {"row": "kappa-small-injections", "ambient": base.name,
            "pointed": cal.pointed, "regular": cal.regular,
            "diffs": diffs, "passed": not diffs and cal.pointed and cal.regular}


def row_conduche_suite(max_size=2):
    """Conduche checks: identities and generated discrete opfibrations pass;
    the composite-arrow functor fails with the middle-object witness; the
    comma factorization certifies on every probe functor."""
    from ..fincat import build_functor, interval_category, chain_category
    from ..catclasses import (is_conduche, groth_of_diagram, diagram_category,
                              comma_factorization, discrete_fibration_check)
    diffs = []
    probes = standard_probes()
    # identity + generated discrete opfibrations are Conduche
    for name, C in probes.items():
        from ..fincat import identity_functor
        ok, w = is_conduche(identity_functor(C))
        if not ok:
            diffs.append({"functor": f"id_{name}", "conduche": False})
        dcat, by = diagram_category(C, max_size)
        for key in dcat.objects:
            total, proj = groth_of_diagram(by[key])
            okd, _ = discrete_fibration_check(proj, "co")
            okc, w = is_conduche(proj)
            if not (okd and okc):
                diffs.append({"functor": f"groth over {name}", "key": repr(key),
                              "dof": okd, "conduche": okc})
    # the composite arrow [1] -> [2] fails with the 0 -> 1 -> 2 witness
    I, two = interval_category(), chain_category(2)
    comp_f = build_functor("comp", I, two, {"0": "0", "1": "2"}, {"a": "0<=2"})
    ok, w = is_conduche(comp_f)
    if ok or w[1] != "0<=1" or w[2] != "1<=2":
        diffs.append({"functor": "[1]->[2] composite", "expected":
                      "fails at (0<=1, 1<=2)", "got": repr(w)})
    witness_comp = repr(w)
    # comma factorization over all probe functors (domains up to 4 objects)
    from ..fincat import product_category, interval_category as _iv
    fact_probes = dict(probes)
    fact_probes["square"] = product_category([_iv(), _iv()])
    n_f = 0
    for Cd in fact_probes.values():
        for Cc in fact_probes.values():
            for f in all_functors(Cd, Cc):
                n_f += 1
                cf = comma_factorization(f)
                if not cf.composite_equals_input or \
                        not cf.certificates["second_cocartesian_fibration"]:
                    diffs.append({"functor": f"{Cd.name}->{Cc.name}:{f.ob}",
                                  "comma_factorization": cf.certificates})
                cfd = comma_factorization(f, discretize=True)
                if not cfd.composite_equals_input or \
                        not cfd.certificates["second_discrete_opfibration"] or \
                        not cfd.certificates["first_initial"]:
                    diffs.append({"functor": f"{Cd.name}->{Cc.name}:{f.ob}",
                                  "discretized": cfd.certificates})
    return {"row": "conduche-suite", "probe_functors": n_f,
            "composite_witness": witness_comp,
            "diffs": diffs, "passed": not diffs}


def row_left_fib_strict_smooth(max_size=2):
    """strict smooth set of the set-valued-functor fibration equals the
    discrete opfibrations, over all probe functors."""
    rep = dof_strict_smooth_row(max_size)
    return {"row": "left-fib-strict-smooth", "checked": rep["checked"],
            "diffs": [{"case": repr(d)} for d in rep["disagreements"]],
            "passed": not rep["disagreements"]}


def row_finite_space(points=4, ambient=None):
    """Locale row shadow: smooth <=> open and proper <=> universally closed,
    each side by an independent oracle on specialization posets."""
    rep = finite_space_row(points, ambient)
    diffs = [{"map": repr(m), "column": "smooth<=>open"}
             for m in rep["mismatch_open"]]
    diffs += [{"map": repr(m), "column": "proper<=>universally-closed"}
              for m in rep["mismatch_closed"]]
    n_open = sum(1 for v in rep["smooth"].values() if v)
    n_prop = sum(1 for v in rep["proper"].values() if v)
    return {"row": "finite-space-locale", "points": points,
            "maps": rep["maps"], "open_maps": n_open,
            "universally_closed_maps": n_prop,
            "diffs": diffs, "passed": not diffs}


def row_represented_empty(bound=2):
    """The functor represented by the empty category: smooth = proper =
    acyclic = surjections, localic = injections."""
    from ..fincat import build_category
    base = FinSetBase(bound * bound)
    scope = base.tier_scope(bound)
    empty = build_category("0", [])
    rep = represented_indexed(empty, base)
    cl = Classifier(rep, scope, mode="nested")
    diffs = []
    for u in scope.all_arrows():
        r = cl.classify(u)
        surj = u.is_surjective()
        inj = u.is_injective()
        for col, got, want in (("smooth", r.smooth, surj),
                               ("proper", r.proper, surj),
                               ("acyclic", r.acyclic, surj),
                               ("localic", r.localic, inj)):
            if got != want:
                diffs.append({"arrow": repr(u), "column": col,
                              "expected": want, "got": got})
    return {"row": "represented-empty", "ambient": base.name,
            "scope": scope.name, "diffs": diffs, "passed": not diffs}


def row_quantifiers(bound=5):
    """Brute-force adjoints equal the exists/forall formulas; every mate over
    every cartesian square is invertible (bulk exact tensors)."""
    count, mism = verify_quantifier_formulas(bound)
    squares, comps, failures = verify_quantifier_mates_bulk(bound)
    diffs = [{"formula_mismatch": repr(m)} for m in mism[:10]]
    if failures:
        diffs.append({"mate_failures": failures})
    return {"row": "quantifier-adjoints", "functions": count,
            "squares": squares, "component_checks": comps,
            "diffs": diffs, "passed": not diffs}


def row_bounds(kappa=4, M=2):
    rep = smooth_proper_bounds(kappa, M)
    return {"row": "smooth-proper-bounds", "kappa": kappa, "index_bound": M,
            "operational_smooth": rep.operational_smooth,
            "operational_proper": rep.operational_proper,
            "arithmetic_smooth": rep.arithmetic_smooth,
            "arithmetic_proper": rep.arithmetic_proper,
            "agree_smooth": rep.agree_smooth,
            "agree_proper": rep.agree_proper,
            "note": "operational and arithmetic sides are both reported; "
                    "finite cardinal arithmetic need not match the "
                    "operational adjoint-existence sets",
            "diffs": [], "passed": True}


ROWS = {
    "quantifier-adjoints": row_quantifiers,
    "subsets-k2": row_subsets_k2,
    "codomain-finset": row_codomain_finset,
    "codomain-m3": row_codomain_m3,
    "epi-mono-modality": row_epi_mono,
    "kappa-small-injections": row_kappa_small_injections,
    "conduche-suite": row_conduche_suite,
    "left-fib-strict-smooth": row_left_fib_strict_smooth,
    "finite-space-locale": row_finite_space,
    "represented-empty": row_represented_empty,
    "smooth-proper-bounds": row_bounds,
}


def verify_table_row(row, **params):
    """Run one registered row; unknown rows raise RowNotFiniteScale."""
    if row not in ROWS:
        raise RowNotFiniteScale(
            f"row {row!r} is not implemented at finite scale; "
            f"known rows: {', '.join(sorted(ROWS))}")
    return ROWS[row](**params)
