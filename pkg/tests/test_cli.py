import json

import pytest

from mtcalc import fusion_data as fd
from mtcalc.cli_io import EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, run_suite


def test_verify_category_builtin_ok():
    status, out = run_suite(["verify-category", "builtin:fibonacci", "--tol", "1e-9"])
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["summary"]["pass"] is True
    assert doc["suite"] == "verify-category"


def test_verify_ffa_trivial_all_zero():
    status, out = run_suite(["verify-ffa", "builtin:trivial"])
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["summary"]["pass"] is True
    assert doc["summary"]["max_residual"] == 0.0


@pytest.mark.parametrize(
    "cmd", ["verify-category", "rigidity", "fusing-symmetries", "verify-ffa"]
)
@pytest.mark.parametrize("name", fd.BUILTIN_NAMES)
def test_all_suites_pass_on_builtins(cmd, name):
    status, out = run_suite([cmd, f"builtin:{name}"])
    assert status == EXIT_OK, out


def test_rigidity_record_count():
    # per label: four zigzags, three records each, plus completeness grid
    status, out = run_suite(["rigidity", "builtin:fibonacci"])
    doc = json.loads(out)
    zig = [r for r in doc["records"] if r["id"].startswith("zigzag")]
    assert len(zig) == 2 * 4 * 3


def test_corrupt_file_verification_fails(tmp_path):
    data = fd.builtin_category("fibonacci")
    bad = fd.CategoryData(
        data.ring,
        data.F,
        {**data.R, (1, 1, 0, 0, 0): -data.R[(1, 1, 0, 0, 0)]},
        data.twist,
    )
    path = tmp_path / "corrupt.json"
    path.write_text(fd.emit_category(bad))
    status, out = run_suite(["verify-category", str(path)])
    assert status == EXIT_VERIFY
    doc = json.loads(out)
    hex_fail = [
        r for r in doc["records"] if r["id"] == "hexagon" and not r["pass"]
    ]
    assert hex_fail


def test_unparseable_file_is_input_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    status, out = run_suite(["verify-category", str(path)])
    assert status == EXIT_INPUT


def test_missing_file_is_input_error():
    status, _ = run_suite(["verify-category", "/no/such/file.json"])
    assert status == EXIT_INPUT


def test_unknown_builtin_is_input_error():
    status, _ = run_suite(["verify-category", "builtin:unobtainium"])
    assert status == EXIT_INPUT


def test_bad_usage():
    status, _ = run_suite(["frobulate"])
    assert status == EXIT_USAGE
    status, _ = run_suite([])
    assert status == EXIT_USAGE
    status, _ = run_suite(["operad-check", "--trials", "few"])
    assert status == EXIT_USAGE


def test_build_ffa_then_verify_file(tmp_path):
    path = tmp_path / "fib_ffa.json"
    status, _ = run_suite(["build-ffa", "builtin:fibonacci", "--out", str(path)])
    assert status == EXIT_OK
    doc = json.loads(path.read_text())
    assert [list(p) for p in doc["summands"]] == [[0, 0], [1, 1]]
    status, out = run_suite(["verify-ffa", str(path)])
    assert status == EXIT_OK, out


def test_reports_byte_identical():
    args = ["operad-check", "--trials", "25", "--seed", "9"]
    out1 = run_suite(args)
    out2 = run_suite(args)
    assert out1 == out2
    args = ["verify-ffa", "builtin:ising"]
    assert run_suite(args) == run_suite(args)


def test_exact_flag_bitwise_reports():
    args = ["operad-check", "--trials", "10", "--seed", "4", "--exact"]
    assert run_suite(args) == run_suite(args)


def test_text_format():
    status, out = run_suite(["verify-category", "builtin:trivial", "--format", "text"])
    assert status == EXIT_OK
    assert "pass=True" in out and "suite: verify-category" in out


def test_out_flag_writes_file(tmp_path):
    path = tmp_path / "report.json"
    status, out = run_suite(
        ["verify-category", "builtin:ising", "--out", str(path)]
    )
    assert status == EXIT_OK and out == ""
    assert json.loads(path.read_text())["summary"]["pass"] is True


def test_console_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "mtcalc.cli_io", "verify-category", "builtin:trivial"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["pass"] is True


def test_empty_report_summary():
    from mtcalc.report import Report, emit_report
    import json as _json

    rep = Report(suite="empty", tol=1e-9)
    doc = _json.loads(emit_report(rep, "json"))
    assert doc["summary"]["checks"] == 0
    assert doc["summary"]["pass"] is True
    assert doc["summary"]["max_residual"] == 0.0
