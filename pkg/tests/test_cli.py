import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ptwell import cli
from ptwell.operators import VerificationReport
from ptwell.secular import Z_CRIT


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum_json_schema(capsys):
    code, out, _ = run(capsys, "spectrum", "--x", "1", "--y", "1", "--z", "0", "--n-max", "3")
    assert code == 0
    doc = json.loads(out)
    assert list(doc)[:4] == ["params", "levels", "physical", "tool_version"]
    assert len(doc["levels"]) == 8 and doc["physical"] is True
    assert list(doc["levels"][0]) == ["n", "sigma", "s", "t", "E", "Q", "quasi_parity"]
    by = {(lv["n"], lv["sigma"]): lv["E"] for lv in doc["levels"]}
    for n in range(4):
        assert abs(by[(n, 1)] - by[(n, -1)]) < 1e-10


def test_spectrum_non_physical_exit(capsys):
    code, out, err = run(capsys, "spectrum", "--x", "1", "--y", "1", "--z", "4.0")
    assert code == 2
    doc = json.loads(out)
    assert doc["physical"] is False and doc["first_complex_pair"] == [0, 1, 1]
    assert "complexified" in err


def test_decoupling_limit_is_usage_error(capsys):
    code, out, err = run(capsys, "spectrum", "--x", "0", "--y", "1")
    assert code == 1 and out == "" and "decoupling" in err


def test_bad_flags_exit_one(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "spectrum", "--tol", "0")[0] == 1
    assert run(capsys, "phase", "--xy", "0:1")[0] == 1
    assert run(capsys, "phase", "--xy", "-1:1:0.5")[0] == 1


def test_output_is_byte_deterministic(capsys):
    a = run(capsys, "spectrum", "--z", "0.37", "--n-max", "5")[1]
    b = run(capsys, "spectrum", "--z", "0.37", "--n-max", "5")[1]
    assert a == b
    # 17 significant digits round-trip exactly
    s = json.loads(a)["levels"][3]["s"]
    assert cli.fmt_float(s) == format(s, ".17g")


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--n-max", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and list(rows[0]) == ["n", "sigma", "s", "t", "E", "Q", "quasi_parity"]


@pytest.mark.parametrize("spec,expected", [
    ("0:1:0.25", [0.0, 0.25, 0.5, 0.75]),
    ("0:0.3:0.1", [0.0, 0.1, 0.2]),
    ("2", [2.0]),
    ("1:1:0.5", []),
])
def test_range_syntax(spec, expected):
    assert cli.parse_range(spec) == expected


def test_phase_boundary_follows_shifted_constant(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PTWELL_THREADS", "2")
    out_file = tmp_path / "phase.csv"
    code, out, _ = run(capsys, "phase", "--xy", "0:4:0.5", "--z", "0:5:0.1", "-o", str(out_file))
    assert code == 0 and out == ""
    rows = list(csv.DictReader(out_file.open()))
    assert len(rows) == 8 * 50 and list(rows[0]) == ["xy", "z", "physical", "first_complex_pair"]
    boundary = list(csv.DictReader((tmp_path / "phase_boundary.csv").open()))
    assert len(boundary) == 8
    for b in boundary:
        assert abs(float(b["z_star_plus_sqrt_xy"]) - Z_CRIT) <= 0.1


def test_phase_stdout_has_two_tables(capsys):
    code, out, _ = run(capsys, "phase", "--xy", "0:2:1", "--z", "4:5:0.5")
    tables = out.strip().split("\n\n")
    assert code == 0 and len(tables) == 2
    assert tables[1].startswith("xy,z_star")


def test_perturb_table(capsys):
    code, out, _ = run(capsys, "perturb", "--z-eff", "1", "--n", "4:41:1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 37
    assert all(float(r["err2"]) < float(r["err1"]) for r in rows)
    code, out, _ = run(capsys, "perturb", "--z", "0.2", "--n", "0:3:1", "--format", "json")
    assert code == 0 and len(json.loads(out)["rows"]) == 6


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--x", "1", "--y", "1", "--z", "0.5", "--grid-n", "200")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] is True and doc["norm"] == "max"
    assert doc["identities"]["metric_flipped_sign_negative"]["passed"] is True


def test_verify_failure_exit_three(capsys, monkeypatch):
    def failing(*a, **k):
        rep = VerificationReport()
        rep.add("broken", 1.0, 0.0)
        return rep

    monkeypatch.setattr(cli, "run_verification", failing)
    code, out, err = run(capsys, "verify")
    assert code == 3 and "broken" in err


def test_wavefunction_endpoints_vanish(capsys):
    code, out, _ = run(capsys, "wavefunction", "--n", "0", "--sigma", "+1", "--samples", "101")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["x", "re_phi", "im_phi", "re_chi", "im_chi"]
    assert len(rows) == 102
    for row in (rows[1], rows[-1]):
        assert all(abs(float(v)) < 1e-15 for v in row[1:])
    assert float(rows[1][0]) == -1 and float(rows[-1][0]) == 1


def test_wavefunction_rejects_tiny_sample_count(capsys):
    assert run(capsys, "wavefunction", "--samples", "1")[0] == 1


def test_json_renderer():
    assert cli.render_json({"a": [1, 2.5, None, True, math.nan]}) == '{"a": [1, 2.5, null, true, null]}'
    with pytest.raises(TypeError):
        cli.render_json(object())


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ptwell", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "ptwell" in res.stdout
