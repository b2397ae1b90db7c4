import csv
import math
import subprocess
import sys

import numpy as np
import pytest

from relspin import __version__, dirac
from relspin.cli import RunConfig, UsageError, main
from relspin.dirac import ALPHA_EL_CODATA


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def data_rows(text):
    return list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))


def test_header_records_config(capsys):
    code, out, _ = run(["energy", "--z", "1", "--seed", "7", "--radial-order", "32"], capsys)
    assert code == 0
    head = [line for line in out.splitlines() if line.startswith("#")]
    assert head[0] == f"# relspin {__version__}"
    assert "seed=7" in head[1] and "radial_order=32" in head[1] and f"alpha_el={ALPHA_EL_CODATA!r}" in head[1]
    assert head[2].startswith("# command: relspin energy --n 1 --j 1/2 --z 1")


def test_energy_values(capsys):
    _, out, _ = run(["energy", "--z", "1", "--format", "csv"], capsys)
    (row,) = data_rows(out)
    assert float(row["energy_m0c2"]) == pytest.approx(0.999973374, abs=5e-10)
    _, out, _ = run(["energy", "--z", "137", "--format", "csv"], capsys)
    (row,) = data_rows(out)
    assert float(row["energy_m0c2"]) == pytest.approx(math.sqrt(1 - (137 * ALPHA_EL_CODATA) ** 2), rel=1e-11)


def test_energy_excited_and_bad_quantum_numbers(capsys):
    code, out, _ = run(["energy", "--n", "2", "--j", "3/2", "--z", "10", "--format", "csv"], capsys)
    assert code == 0 and 0 < float(data_rows(out)[0]["energy_m0c2"]) < 1
    code, _, err = run(["energy", "--n", "1", "--j", "3/2", "--z", "10"], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run(["energy", "--j", "half", "--z", "10"], capsys)
    assert code == 2


def test_supercritical_energy(capsys):
    code, out, err = run(["energy", "--z", "138"], capsys)
    assert code == 2 and out == "" and "alpha_el * Z" in err


def test_alpha_override_changes_criticality(capsys):
    code, _, _ = run(["energy", "--z", "120", "--alpha-el", "0.01"], capsys)
    assert code == 2
    code, out, _ = run(["energy", "--z", "90", "--alpha-el", "0.01", "--format", "csv"], capsys)
    assert code == 0
    assert float(data_rows(out)[0]["energy_m0c2"]) == pytest.approx(math.sqrt(1 - 0.81), rel=1e-12)


def test_scan_csv_layout(capsys):
    code, out, _ = run(["scan", "--kinds", "Pryce,pauli", "--z-min", "3", "--z-max", "5"], capsys)
    assert code == 0
    body = [line for line in out.splitlines() if not line.startswith("#")]
    assert body[0] == "kind,Z,axis,value,variance,error_estimate"
    rows = data_rows(out)
    assert [(r["kind"], r["Z"]) for r in rows] == [(k, str(z)) for k in ("Pauli", "Pryce") for z in (3, 4, 5)]
    for r in rows:
        assert len(r["value"].replace("-", "").replace(".", "").lstrip("0")) <= 12
    assert all(abs(float(r["value"]) - 0.5) < 1e-8 for r in rows if r["kind"] == "Pryce")


def test_scan_text_format(capsys):
    code, out, _ = run(["scan", "--kinds", "fw", "--z-min", "1", "--z-max", "2", "--format", "text"], capsys)
    assert code == 0
    assert out.splitlines()[3].split() == ["kind", "Z", "axis", "value", "variance", "error_estimate"]


@pytest.mark.parametrize(
    "argv",
    [
        ["scan", "--kinds", ""],
        ["scan", "--kinds", " , "],
        ["scan", "--kinds", "Dirac"],
        ["scan", "--z-min", "0"],
        ["scan", "--z-min", "10", "--z-max", "5"],
        ["scan", "--z-max", "138"],
        ["scan", "--axis", "4"],
        ["scan", "--radial-order", "3"],
        ["scan", "--angular-order", "1"],
        ["table1", "--samples", "0"],
        ["state", "--z", "0"],
        ["scan", "--alpha-el", "0.01", "--z-max", "120"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--z-min", "one"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_scan_deterministic_files(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["scan", "--z-min", "1", "--z-max", "4"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_state_dump(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert main(["state", "--z", "1", "--out", str(out)]) == 0
    text = out.read_text()
    meta = dict(kv.split("=") for line in text.splitlines() if line.startswith("# ") and "=" in line
                for kv in line[2:].split() if "=" in kv)
    assert float(meta["norm_momentum"]) == pytest.approx(1.0, abs=1e-8)
    rows = data_rows(text)
    assert len(rows) == 64
    p = np.array([float(r["p"]) for r in rows])
    w = np.array([float(r["weight"]) for r in rows])
    g = np.array([float(r["g_momentum"]) for r in rows])
    f = np.array([float(r["f_momentum"]) for r in rows])
    assert np.all(np.diff(p) > 0) and p[0] > 0
    # the table alone reproduces the norm to printed precision
    assert np.sum(w * (g * g + f * f)) == pytest.approx(1.0, abs=1e-10)
    again = tmp_path / "t.csv"
    main(["state", "--z", "1", "--out", str(again)])
    assert again.read_bytes() == out.read_bytes()


def test_state_gamma_z120(capsys):
    _, out, _ = run(["state", "--z", "120", "--orientation", "down"], capsys)
    line = next(line for line in out.splitlines() if line.startswith("# gamma="))
    gamma = float(line.split()[1].split("=")[1])
    assert gamma == pytest.approx(math.sqrt(1 - (120 * ALPHA_EL_CODATA) ** 2), rel=1e-11)


def test_table1_default_and_tight_tolerance(capsys):
    code, out, _ = run(["table1", "--format", "csv"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert [r["match"] for r in rows] == ["ok"] * 6
    assert "# 18/18 cells match" in out
    code, _, err = run(["table1", "--tolerance", "1e-15", "--samples", "200"], capsys)
    assert code == 1 and "cells match" in err


def test_table1_seed_independent(capsys):
    patterns = set()
    for seed in range(5):
        code, out, _ = run(["table1", "--format", "csv", "--seed", str(seed)], capsys)
        assert code == 0
        patterns.add(tuple((r["commutes_h0"], r["spin_algebra"], r["eigen_half"]) for r in data_rows(out)))
    assert len(patterns) == 1


def test_verify_default_passes(capsys):
    code, out, _ = run(["verify", "--format", "csv"], capsys)
    rows = data_rows(out)
    assert code == 0
    assert [r["group"] for r in rows] == ["dirac_algebra", "table1", "hydrogen", "expectation", "convergence"]
    assert all(r["status"] == "PASS" for r in rows)


def test_verify_catches_corrupted_beta(monkeypatch, capsys):
    monkeypatch.setattr(dirac, "beta_matrix", lambda: np.diag([1, 1, 1, -1]).astype(complex))
    from relspin import verify

    monkeypatch.setattr(verify, "check_table1", lambda *a, **k: verify.GroupResult("table1", True, "skipped"))
    monkeypatch.setattr(verify, "check_hydrogen", lambda *a, **k: verify.GroupResult("hydrogen", True, "skipped"))
    monkeypatch.setattr(verify, "check_expectation", lambda *a, **k: verify.GroupResult("expectation", True, "skipped"))
    monkeypatch.setattr(verify, "check_convergence", lambda *a, **k: verify.GroupResult("convergence", True, "skipped"))
    code, out, _ = run(["verify", "--format", "csv"], capsys)
    status = {r["group"]: r["status"] for r in data_rows(out)}
    assert code == 1 and status["dirac_algebra"] == "FAIL"


def test_verify_under_resolved_angular_grid(capsys):
    code, out, err = run(["verify", "--angular-order", "2", "--format", "csv"], capsys)
    status = {r["group"]: (r["status"], r["detail"]) for r in data_rows(out)}
    assert code == 1
    assert status["convergence"][0] == "FAIL" and "order doubling" in status["convergence"][1]
    assert "warning" in err


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(radial_order=2)
    with pytest.raises(UsageError):
        RunConfig(format="json")
    with pytest.raises(UsageError):
        RunConfig(alpha_el=1.5)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "relspin", "energy", "--z", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "energy_m0c2" in res.stdout
