"""End-to-end regression for the suite battery and its expected findings."""

from steenrod import verify


def test_full_battery_at_reduced_caps_has_exactly_the_expected_findings():
    reports = verify.run_suites(list(verify.SUITES), max_degree=10)
    failures = {
        (r.suite, c.check_id)
        for r in reports
        for c in r.checks
        if c.status == "fail"
    }
    assert failures == verify.EXPECTED_FINDINGS
    # every failing row carries a witness
    for r in reports:
        for c in r.checks:
            if c.status == "fail":
                assert c.witness


def test_suite_names_are_stable():
    assert sorted(verify.SUITES) == [
        "a1-modules",
        "bpsp-model",
        "cp2-transfer",
        "dual-quotients",
        "e1-modules",
        "hopf",
        "hp2-transfer",
        "indecomposables",
        "pairing",
        "power-sums",
        "primitive-transfer",
        "primitives",
    ]


def test_environment_cap_override(monkeypatch):
    monkeypatch.setenv("STEENROD_CAP_DUAL_QUOTIENTS", "8")
    (report,) = verify.run_suites(["dual-quotients"])
    assert any("degree 8" in c.check_id for c in report.checks)
