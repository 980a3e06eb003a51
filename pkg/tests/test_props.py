from fibercalc.props import run_property_suites, SUITES
from fibercalc.report import render


def test_all_suites_clean_small():
    doc = run_property_suites("unit", instances=25)
    assert doc["passed"]
    for name, s in doc["suites"].items():
        assert s["violation_count"] == 0
        assert s["checked"] >= 20


def test_suites_deterministic():
    a = render(run_property_suites(9, instances=15), "structured")
    b = render(run_property_suites(9, instances=15), "structured")
    assert a == b


def test_suite_registry_complete():
    assert set(SUITES) == {"adjunction-triangles", "mate-pasting",
                           "implication-lattice", "closure-properties",
                           "regular-iff-sums"}
