import json
import math
import shutil
import subprocess

import numpy as np
import pytest

from rhsignal import (BasisSpec, CoeffVector, OperatorMatrix, SampledSignal,
                      hermite_function_batch, laguerre_function_batch, read_coeffs,
                      read_signal, write_coeffs, write_signal)
from rhsignal import halfline, line_operators
from rhsignal.cli import JobConfig, build_parser, main, run


@pytest.fixture
def psi3_csv(tmp_path):
    x = np.linspace(-10, 10, 2001)
    p = tmp_path / "psi3.csv"
    write_signal(p, SampledSignal(x, hermite_function_batch(3, x)[3]))
    return p


def test_expand_psi3(psi3_csv, tmp_path):
    out = tmp_path / "c.json"
    assert main(["expand", "--n-max", "16", "--in", str(psi3_csv), "--out", str(out)]) == 0
    c = read_coeffs(out)
    assert c.basis == BasisSpec.hermite(16)
    assert abs(c.coeffs[3] - 1) < 1e-8
    assert np.max(np.abs(np.delete(c.coeffs, 3))) < 1e-8


def test_project_writes_mask_and_reports_energy(tmp_path, capsys):
    src = tmp_path / "c.csv"
    write_coeffs(src, CoeffVector(BasisSpec.hermite(7), np.arange(1, 9)))
    out = tmp_path / "p.csv"
    assert main(["project", "--k", "4", "--r", "2", "--in", str(src), "--out", str(out)]) == 0
    assert read_coeffs(out).coeffs.tolist() == [0, 0, 3, 0, 0, 0, 7, 0]
    report = json.loads(capsys.readouterr().out)
    assert report["energy"] == [1 + 25, 4 + 36, 9 + 49, 16 + 64]
    assert report["kept"] == {"r": 2, "energy": pytest.approx(58.0)}


def test_energy_and_frft_on_coeffs(tmp_path, capsys):
    src = tmp_path / "c.json"
    write_coeffs(src, CoeffVector(BasisSpec.hermite(3), [1, 0, 0, 1]))
    assert main(["frft", "--angle", str(math.pi / 2), "--in", str(src)]) == 0
    got = json.loads(capsys.readouterr().out)["coefficients"]
    assert got == [[1, 0], [0, 0], [0, 0], [0, -1]]
    assert main(["energy", "--k", "2", "--in", str(src)]) == 0
    assert json.loads(capsys.readouterr().out)["energy"] == [1, 1]
    csv_out = tmp_path / "e.csv"
    assert main(["energy", "--k", "2", "--in", str(src), "--out", str(csv_out)]) == 0
    assert csv_out.read_text().splitlines()[0] == "r,energy"


def test_frft_on_signal(psi3_csv, tmp_path):
    out = tmp_path / "f.csv"
    assert main(["frft", "--angle", "1.0", "--n-max", "8", "--in", str(psi3_csv),
                 "--out", str(out), "--grid=-2:2:5"]) == 0
    s = read_signal(out)
    want = np.exp(3j) * hermite_function_batch(3, s.grid)[3]
    assert np.max(np.abs(s.values - want)) < 1e-10


def test_synth_round_trip(tmp_path):
    src = tmp_path / "c.json"
    write_coeffs(src, CoeffVector(BasisSpec.laguerre(3, 0.5), [0, 1, 0, 0]))
    out = tmp_path / "s.json"
    assert main(["synth", "--in", str(src), "--out", str(out), "--grid", "0.5:4:8"]) == 0
    s = read_signal(out)
    assert s.domain == "half_line"
    assert np.max(np.abs(s.values - laguerre_function_batch(1, 0.5, s.grid)[1])) < 1e-15


def test_halfline_and_transform(tmp_path, capsys):
    y = np.linspace(0.01, 60, 3000)
    sig = tmp_path / "h.csv"
    write_signal(sig, SampledSignal(y, laguerre_function_batch(3, 0.5, y)[3], "half_line"))
    cf = tmp_path / "hc.json"
    assert main(["halfline", "--alpha", "0.5", "--n-max", "6", "--in", str(sig),
                 "--out", str(cf)]) == 0
    c = read_coeffs(cf)
    assert abs(c.coeffs[3] - 1) < 1e-10
    assert main(["transform", "--k", "2", "--in", str(cf)]) == 0
    out = json.loads(capsys.readouterr().out)["coefficients"]
    assert out[3][0] == pytest.approx(-1, abs=1e-10)
    to = tmp_path / "t.csv"
    assert main(["transform", "--kind", "plus", "--in", str(sig), "--grid", "1:4:4",
                 "--out", str(to)]) == 0
    t = read_signal(to)
    assert np.max(np.abs(t.values + laguerre_function_batch(3, 0.5, t.grid)[3])) < 1e-4


@pytest.mark.parametrize("argv", [
    ["project", "--k", "4", "--r", "5", "--in", "x.json"],
    ["energy", "--in", "x.json"],
    ["frft", "--in", "x.json"],
    ["expand"],
    ["verify", "--tol", "0"],
    ["expand", "--n-max", "-1", "--in", "x.csv"],
])
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_parse_error_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("# family=hermite n_max=3\n0,1,0\n")
    assert main(["energy", "--k", "2", "--in", str(bad)]) == 2
    assert "n_max=3" in capsys.readouterr().err


def test_insufficient_grid_exit_2(tmp_path, capsys):
    p = tmp_path / "narrow.csv"
    x = np.linspace(-2, 2, 50)
    write_signal(p, SampledSignal(x, np.exp(-x * x / 2)))
    assert main(["expand", "--n-max", "16", "--in", str(p)]) == 2
    assert "turning point" in capsys.readouterr().err


def test_argparse_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--grid", "1:2"])
    assert exc.value.code == 2


def test_verify_passes_and_prints_table(capsys, tmp_path):
    report = tmp_path / "report.txt"
    assert main(["verify", "--tol", "1e-9", "--out", str(report)]) == 0
    out = capsys.readouterr().out
    assert "checks under tolerance" in out and "FAIL" not in out
    assert report.read_text().strip() == out.strip()


def test_run_with_config_object():
    assert run(JobConfig("verify", tolerance=1e-9).validate()) == 0


def _corrupting(builder, which, i, j, eps=1e-6):
    def patched(*args, **kwargs):
        mats = list(builder(*args, **kwargs))
        m = mats[which].entries.copy()
        m[i, j] += eps
        mats[which] = OperatorMatrix(m, m.shape[0] - 1)
        return tuple(mats)
    return patched


FAULTS = [
    (line_operators, "ladder_ops", 0, 3, 4),
    (line_operators, "ladder_ops", 1, 10, 9),
    (line_operators, "ladder_ops", 0, 0, 40),
    (line_operators, "canonical_ops", 0, 5, 6),
    (line_operators, "canonical_ops", 1, 2, 2),
    (line_operators, "canonical_ops", 2, 1, 0),
    (line_operators, "canonical_ops", 3, 7, 7),
    (line_operators, "canonical_ops", 4, 0, 0),
    (line_operators, "index_ops", 0, 6, 6),
    (line_operators, "index_ops", 1, 2, 2),
    (line_operators, "subladder", 0, 0, 4),
    (line_operators, "subladder", 1, 9, 5),
    (line_operators, "subladder", 1, 3, 1),
    (line_operators, "subladder_formula", 1, 8, 4),
    (halfline, "su11_ops", 0, 1, 0),
    (halfline, "su11_ops", 1, 4, 5),
    (halfline, "su11_ops", 2, 3, 3),
    (halfline, "su11_ops", 2, 0, 12),
]


@pytest.mark.parametrize("module,name,which,i,j", FAULTS)
def test_single_entry_fault_fails_verify(monkeypatch, capsys, module, name, which, i, j):
    monkeypatch.setattr(module, name, _corrupting(getattr(module, name), which, i, j))
    assert main(["verify", "--tol", "1e-9"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_random_single_entry_faults(monkeypatch, capsys):
    rng = np.random.default_rng(7)
    for _ in range(12):
        module, name, which = [(line_operators, "ladder_ops", 1), (line_operators, "canonical_ops", 0),
                               (line_operators, "subladder", 0), (halfline, "su11_ops", 1)][rng.integers(4)]
        i, j = rng.integers(0, 30, 2)
        with monkeypatch.context() as mp:
            mp.setattr(module, name, _corrupting(getattr(module, name), which, i, j))
            assert main(["verify"]) == 1
    capsys.readouterr()


def test_parser_lists_all_subcommands():
    text = build_parser().format_help()
    for cmd in ("expand", "synth", "frft", "project", "energy", "halfline", "transform", "verify"):
        assert cmd in text


@pytest.mark.skipif(shutil.which("rhsignal") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["rhsignal", "verify", "--tol", "1e-9"], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run(["rhsignal", "frft", "--in", "nope.json", "--angle", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.startswith("rhsignal: error:")
