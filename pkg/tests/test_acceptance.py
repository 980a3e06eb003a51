"""Acceptance suite: one test per exit criterion, printing a verdict line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the whole suite is exact (no tolerances anywhere: every comparison
is equality of finite structures).
"""

import subprocess
import sys

import pytest

from fibercalc.corpus import verify_table_row
from fibercalc.props import run_property_suites, suite_regular_iff_sums
from fibercalc.report import render


def _verdict(n, label, passed, detail=""):
    line = f"ACCEPTANCE {n} [{label}]: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert passed, line


def test_acceptance_1_quantifier_adjoints():
    # all functions between sets of size <= 5 (corners up to 25): brute-force
    # adjoints equal the exists/forall formulas; every mate over every
    # cartesian square is invertible; exact equality throughout
    doc = verify_table_row("quantifier-adjoints", bound=5)
    _verdict(1, "quantifier adjoints <=5", doc["passed"],
             f"{doc['functions']} functions, {doc['squares']} squares, "
             f"{doc['component_checks']} component checks")


def test_acceptance_2_subsets_row():
    doc = verify_table_row("subsets-k2", bound=3, ambient=9)
    _verdict(2, "subsets k=2 over FinSet<=3 (ambient 9)", doc["passed"],
             f"{doc['maps']} maps; " + "; ".join(
                 f"{k}={v}" for k, v in sorted(doc["columns"].items())))


def test_acceptance_3_codomain_row():
    doc = verify_table_row("codomain-finset", bound=3)
    doc_m3 = verify_table_row("codomain-m3")
    passed = doc["passed"] and doc_m3["passed"]
    _verdict(3, "codomain fibration over FinSet<=3 + M3 negative", passed,
             f"{doc['maps']} maps; M3 non-exponentiable: "
             f"{doc_m3['failing_exponentiability']}")


def test_acceptance_4_strictness_suite():
    doc = verify_table_row("epi-mono-modality", bound=4)
    _verdict(4, "(epi,mono) modality on FinSet<=4", doc["passed"],
             f"is_ofs={doc['factorization']['is_ofs']}, "
             f"is_modality={doc['factorization']['is_modality']}; every map "
             "smooth, strict smooth = injections, every map strictly proper")


def test_acceptance_5_regular_iff_sums():
    import random
    rng = random.Random("acceptance-5")
    checked, violations = suite_regular_iff_sums(rng, 50)
    _verdict(5, "regularity <=> sums on 50 seeded calibrations",
             checked == 50 and not violations,
             f"agreement in {checked - len(violations)}/{checked} cases")


def test_acceptance_6_functor_class_suite():
    doc = verify_table_row("conduche-suite")
    doc2 = verify_table_row("left-fib-strict-smooth")
    passed = doc["passed"] and doc2["passed"]
    _verdict(6, "Conduche + comma factorization + strict smooth = dof",
             passed,
             f"{doc['probe_functors']} probe functors; composite witness "
             f"{doc['composite_witness']}; strict-smooth checked "
             f"{doc2['checked']}")


def test_acceptance_7_finite_space_row():
    doc = verify_table_row("finite-space-locale", points=4)
    _verdict(7, "finite T0 spaces <=4 pts: smooth<=>open, "
             "proper<=>universally closed", doc["passed"],
             f"{doc['maps']} maps; {doc['open_maps']} open, "
             f"{doc['universally_closed_maps']} universally closed")


def test_acceptance_8_property_suites():
    doc = run_property_suites("acceptance-8", instances=200)
    detail = "; ".join(f"{k}:{v['checked']} checked"
                       for k, v in sorted(doc["suites"].items()))
    _verdict(8, "structural property suites, 200 seeded instances each",
             doc["passed"], detail)


def test_acceptance_9_determinism():
    cmd = [sys.executable, "-m", "fibercalc.cli", "--seed", "acc9",
           "--format", "structured", "props", "--instances", "40"]
    r1 = subprocess.run(cmd, capture_output=True, text=True)
    r2 = subprocess.run(cmd, capture_output=True, text=True)
    row = [sys.executable, "-m", "fibercalc.cli", "corpus", "--row",
           "subsets-k2", "--bound", "2", "--ambient", "4"]
    r3 = subprocess.run(row, capture_output=True, text=True)
    r4 = subprocess.run(row, capture_output=True, text=True)
    passed = (r1.returncode == 0 and r1.stdout == r2.stdout
              and r3.returncode == 0 and r3.stdout == r4.stdout)
    _verdict(9, "byte-identical reports for identical seeds", passed,
             f"{len(r1.stdout)}+{len(r3.stdout)} bytes compared")
