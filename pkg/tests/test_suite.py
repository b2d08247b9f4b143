import copy
import json

import pytest

from cqplane.rewrite import builtin_manifest
from cqplane.suite import (
    BUILTIN_SUITES, CHECKS, REPORT_SCHEMA, SuiteDefinition, SuiteError, builtin_suite, exit_code,
    render_output, run_suite,
)


def suite(*checks, **kw):
    return SuiteDefinition.from_dict({"name": "t", "checks": list(checks), **kw})


def test_unknown_check_rejected():
    with pytest.raises(SuiteError, match="unknown check"):
        suite({"check": "nope"})


def test_unknown_parameter_rejected():
    with pytest.raises(SuiteError, match="unknown parameters"):
        suite({"check": "ybe", "params": {"bogus": 1}})


def test_empty_suite():
    reports = run_suite(suite())
    assert reports == [] and exit_code(reports) == 0
    assert json.loads(render_output(reports, "json")) == []
    assert render_output(reports, "text") == ""


def test_builtin_suites_parse():
    for name in BUILTIN_SUITES:
        s = builtin_suite(name)
        assert all(c.check in CHECKS for c in s.checks)
    with pytest.raises(SuiteError):
        builtin_suite("missing")


def test_smoke_suite_passes():
    reports = run_suite(builtin_suite("smoke"))
    assert [r.status for r in reports] == ["pass"] * 3


def test_perturbed_ybe_reports_residual():
    reports = run_suite(suite({"check": "ybe", "params": {"perturb": [1, 2]}}))
    data = json.loads(render_output(reports, "json"))
    assert data[0]["schema"] == REPORT_SCHEMA
    assert data[0]["status"] == "fail" and data[0]["residual"]
    assert exit_code(reports) == 1


def test_corrupted_rules_fail(tmp_path):
    data = copy.deepcopy(builtin_manifest())
    for item in data["families"]:
        if item["name"] == "frt.ba":
            item["rhs"] = "q^(-2-2*l)*a[l]*b[m]"
            item["relation"] = "a[l]*b[m] - q^(2+2*l)*b[m]*a[l]"
    (tmp_path / "bad.json").write_text(json.dumps(data))
    (tmp_path / "suite.json").write_text(json.dumps({
        "name": "bad", "rules": "bad.json",
        "checks": [{"check": "rtt", "params": {"colours": "l,m"}}, "colourless", "counit"],
    }))
    reports = run_suite(SuiteDefinition.load(tmp_path / "suite.json"))
    by = {r.name: r.status for r in reports}
    assert by["rtt"] == "fail" and by["colourless"] == "fail"
    assert by["counit"] == "pass"  # epsilon(b) = 0 hides the wrong exponent


def test_missing_suite_file(tmp_path):
    with pytest.raises(SuiteError):
        SuiteDefinition.load(tmp_path / "none.json")


def test_text_output_is_deterministic():
    s = suite({"check": "ybe"}, {"check": "counit"}, {"check": "ybe", "name": "bad", "params": {"perturb": [4, 4]}})
    a = render_output(run_suite(s), "text", timing=False)
    b = render_output(run_suite(s, jobs=3), "text", timing=False)
    assert a == b
    assert a.splitlines()[0] == "PASS  ybe"
    assert "FAIL  bad" in a


def test_error_status_does_not_abort():
    reports = run_suite(suite({"check": "confluence", "params": {"sector": "nowhere"}}, "counit"))
    assert [r.status for r in reports] == ["error", "pass"]
    assert render_output(reports, "text").startswith("ERROR confluence")
    assert exit_code(reports) == 1
