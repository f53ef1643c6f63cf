import json
import subprocess
import sys

import jsonschema
import pytest

from intlift import cli


def run(command, path, **kw):
    report, code = cli.run(command, path, **kw)
    return report, code


def test_lift_am_on_bundled_fixture():
    report, code = run("lift-am", "fixture:am-s2xs2")
    assert code == 0 and report["status"] == "ok"
    res = report["result"]
    assert res["n"] == 2
    assert res["total_periods"] == [["1", "0"], ["0", "lam"]]
    assert res["fiber_map"] == [["1", "1"]]


def test_integrability_is_refused_with_exit_code_two():
    for fixture in ("am-s2xs2", "derham-s2xs2"):
        report, code = run("integrability", f"fixture:{fixture}")
        assert code == 2 and report["status"] == "not-integrable"
        assert report["result"]["monodromy"]["free_rank"] == 2
        assert report["result"]["monodromy"]["real_span_dim"] == 1


def test_homology_of_the_tetrahedron_boundary():
    report, code = run("homology", "fixture:tetra-boundary")
    assert code == 0 and report["result"]["betti"] == [1, 0, 1]
    assert report["result"]["euler_characteristic"] == 2


def test_derham_and_equivariant():
    report, code = run("lift-dr", "fixture:derham-s2xs2")
    assert code == 0
    assert report["result"]["total_periods"] == [["1", "0", "1"], ["0", "1", "lam"]]
    report, code = run("equivariant", "fixture:z2-swap-action")
    assert code == 0
    res = report["result"]
    assert res["assumptions"] and res["theta_equivariant"] and res["certificate"]["discrete"]
    assert res["periods"] == [["1", "0"], ["0", "1"]]


@pytest.mark.parametrize("command, fixture", [
    ("homology", "tetra-boundary"),
    ("integrability", "am-s2xs2"),
    ("lift-am", "derham-s2xs2"),
    ("lift-dr", "am-s2xs2"),
    ("equivariant", "z2-swap-action"),
])
def test_results_match_their_schema_and_are_stable(command, fixture):
    a, _ = run(command, f"fixture:{fixture}")
    b, _ = run(command, f"fixture:{fixture}")
    jsonschema.validate(a["result"], cli.RESULT_SCHEMAS[command])
    assert cli.render(a) == cli.render(b)
    assert cli.render(a, pretty=True) == cli.render(b, pretty=True)


def test_verify_consumes_a_lift_report(tmp_path):
    out = tmp_path / "lift.json"
    assert cli.main(["lift-am", "--input", "fixture:am-s2xs2", "--output", str(out)]) == 0
    report, code = run("verify", str(out))
    assert code == 0 and report["result"]["verified"]
    # break the fiber map
    doc = json.loads(out.read_text())
    doc["result"]["fiber_map"] = [["1", "0"]]
    out.write_text(json.dumps(doc))
    report, code = run("verify", str(out))
    assert code == 1 and report["error"]["code"] == "VerificationFailed"


@pytest.mark.parametrize("text, code", [
    ("not json", "ParseError"),
    ('{"r": 1}', "SchemaError"),
    ('{"r": 1, "ell": 1, "periods": [["nu"]], "simply_connected": true}', "ParseError"),
    ('{"r": 1, "ell": 1, "periods": [["1"]]}', "NotSimplyConnected"),
])
def test_error_codes(tmp_path, text, code):
    f = tmp_path / "in.json"
    f.write_text(text)
    report, exit_code = run("integrability", str(f))
    assert exit_code == 1
    assert report["status"] == "error" and report["error"]["code"] == code


def test_missing_input_and_unknown_fixture():
    report, code = run("homology", "/nonexistent/file.json")
    assert code == 1 and report["error"]["code"] == "InputUnavailable"
    report, code = run("homology", "fixture:nope")
    assert report["error"]["code"] == "InputUnavailable"


def test_trivial_class_error(tmp_path):
    f = tmp_path / "zero.json"
    f.write_text('{"r": 2, "ell": 1, "periods": [["0"], ["0"]], "simply_connected": true}')
    report, code = run("lift-am", str(f))
    assert code == 1 and report["error"]["code"] == "TrivialClass"


def test_timing_is_opt_in():
    report, _ = run("homology", "fixture:tetra-boundary")
    assert "timing_ms" not in report
    report, _ = run("homology", "fixture:tetra-boundary", timing=True)
    assert report["timing_ms"] >= 0


def test_entry_point_subprocess(tmp_path):
    cmd = [sys.executable, "-m", "intlift", "integrability", "--input", "fixture:am-s2xs2"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 2
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["status"] == "not-integrable"
    bad = subprocess.run(cmd[:3] + ["bogus", "--input", "x"], capture_output=True)
    assert bad.returncode == 1  # usage errors never look like "not integrable"


def test_job_object(tmp_path):
    out = tmp_path / "r.json"
    report, code = cli.run_job(cli.Job("homology", "fixture:tetra-boundary", str(out), {"pretty": True}))
    assert code == 0
    assert out.read_text() == cli.render(report, pretty=True)
