"""Command line surface: exit codes, JSON determinism, file outputs."""

import json
import subprocess
import sys

import numpy as np
import pytest

from lcl.cli import main

CIRCLE = {"kind": "partially_null", "kappa": "1", "tau": "1",
          "domain": [0.0, 6.283185307179586], "label": "circle"}
QUAD = {"kind": "pseudo_null", "tau": "2", "sigma": "-s^2 + s",
        "domain": [0.0, 1.0], "label": "quad"}


@pytest.fixture()
def circle_file(tmp_path):
    path = tmp_path / "circle.json"
    path.write_text(json.dumps(CIRCLE))
    return str(path)


@pytest.fixture()
def quad_file(tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(json.dumps(QUAD))
    return str(path)


def test_synth_writes_expected_row_count(circle_file, tmp_path, capsys):
    out = tmp_path / "trace.csv"
    rc = main(["synth", circle_file, "-o", str(out), "--h", "1e-3"])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6285  # header and 6284 samples
    assert "wrote 6284 samples" in capsys.readouterr().out


def test_synth_profile_flag_and_default_output(circle_file, tmp_path,
                                               capsys):
    rc = main(["synth", "-p", circle_file])
    assert rc == 0
    default_out = circle_file.replace(".json", "_trace.csv")
    assert "circle_trace.csv" in capsys.readouterr().out
    import os
    assert os.path.exists(default_out)


def test_synth_gnuplot_script(circle_file, tmp_path, capsys):
    out = tmp_path / "t.csv"
    rc = main(["synth", circle_file, "-o", str(out), "--emit-gnuplot"])
    assert rc == 0
    script = (tmp_path / "t.gp").read_text()
    assert "splot" in script and "t.csv" in script


def test_classify_default_output_is_compact_json(circle_file, capsys):
    rc = main(["classify", circle_file])
    assert rc == 0
    out = capsys.readouterr().out
    obj = json.loads(out)
    assert obj["verdicts"] == {"k0": "Yes", "k1": "Yes", "k2": "Yes",
                               "k3": "Yes"}
    # compact separators, sorted keys, single line
    assert "\n" not in out.strip()
    assert '", "' not in out


def test_classify_json_flag_is_byte_identical_across_runs(circle_file,
                                                          capsys):
    main(["classify", circle_file, "--json"])
    first = capsys.readouterr().out
    main(["classify", circle_file, "--json"])
    second = capsys.readouterr().out
    assert first == second


def test_classify_pretty_renders_a_report(quad_file, capsys):
    rc = main(["classify", quad_file, "--pretty"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "profile : quad" in out
    assert "verdicts:" in out
    assert "k1: Yes" in out


def test_classify_output_file(quad_file, tmp_path):
    out = tmp_path / "report.json"
    rc = main(["classify", quad_file, "-o", str(out)])
    assert rc == 0
    obj = json.loads(out.read_text())
    assert obj["kind"] == "pseudo_null"


def test_classify_requires_a_profile_somewhere(capsys):
    rc = main(["classify"])
    assert rc == 2
    assert "profile" in capsys.readouterr().err


def test_missing_file_is_a_validation_error(capsys):
    rc = main(["classify", "/nonexistent/prof.json"])
    assert rc == 2


def test_bad_expression_is_a_validation_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "partially_null", "kappa": "sin(s",
                                "tau": "1", "domain": [0.0, 1.0]}))
    rc = main(["classify", str(path)])
    assert rc == 2
    assert "offset 5" in capsys.readouterr().err


def test_vanishing_tau_is_a_validation_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "partially_null", "kappa": "1",
                                "tau": "s - 0.5", "domain": [0.0, 1.0]}))
    rc = main(["classify", str(path)])
    assert rc == 2


def test_zero_step_is_a_validation_error(circle_file, capsys):
    rc = main(["classify", circle_file, "--h", "0"])
    assert rc == 2


def test_oracle_all_rows(circle_file, capsys):
    rc = main(["oracle", circle_file, "--json"])
    assert rc == 0
    obj = json.loads(capsys.readouterr().out)
    assert set(obj) == {"k0", "k1", "k2", "k3"}
    assert all(obj[k]["verdict"] == "Yes" for k in obj)


def test_oracle_single_row_human_output(circle_file, capsys):
    rc = main(["oracle", circle_file, "--k", "2"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("k2: Yes")
    assert "indicatrix constant" in out


def test_verify_small_suite_pass_and_fail(tmp_path, capsys):
    suite = [{"label": "good",
              "profile": {"kind": "partially_null", "kappa": "2", "tau": "6",
                          "domain": [0.0, 1.0]},
              "expected": {"k0": "Y", "k1": "Y", "k2": "Y", "k3": "Y"}}]
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(suite))
    rc = main(["verify", "--suite", str(path)])
    assert rc == 0
    assert "1 passed, 0 failed" in capsys.readouterr().out

    suite[0]["expected"]["k0"] = "N"
    path.write_text(json.dumps(suite))
    rc = main(["verify", "--suite", str(path)])
    assert rc == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_verify_empty_suite_warns_and_exits_zero(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text("[]")
    rc = main(["verify", "--suite", str(path)])
    assert rc == 0
    assert "zero fixtures" in capsys.readouterr().err


def test_verify_malformed_suite_is_a_validation_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    rc = main(["verify", "--suite", str(path)])
    assert rc == 2


def test_sweep_writes_grid_csv(tmp_path):
    spec = {"family": "pn-constant", "domain": [0.0, 1.0],
            "parameters": {"kappa": [1.0, 2.0], "tau": [1.0, 3.0]}}
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(spec))
    out = tmp_path / "grid.csv"
    rc = main(["sweep", str(spec_path), "-o", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 5  # header and 2x2 combinations
    header = lines[0].split(",")
    assert header[:4] == ["family", "kappa", "tau", "perturbation_scale"]
    for line in lines[1:]:
        cells = line.split(",")
        assert cells[0] == "pn-constant"
        assert cells[4] == "ok"
        assert cells[5] == "Yes"  # constant ratio is always 0-type


def test_sweep_perturbation_scales_add_rows(tmp_path):
    spec = {"family": "psn-quadratic", "domain": [0.0, 1.0],
            "parameters": {"a": [0.3], "b": [0.1], "tau": ["1"]},
            "sigma_perturbation": {"expr": "sin(3*s)",
                                   "scales": [0.0, 1e-3]}}
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(spec))
    out = tmp_path / "grid.csv"
    rc = main(["sweep", str(spec_path), "-o", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    base = lines[1].split(",")
    bent = lines[2].split(",")
    k1_col = lines[0].split(",").index("k1")
    assert base[k1_col] == "Yes"
    assert bent[k1_col] == "No"  # the perturbation breaks the quadratic


def test_sweep_rejects_perturbation_for_partially_null(tmp_path, capsys):
    spec = {"family": "pn-constant", "domain": [0.0, 1.0],
            "parameters": {"kappa": [1.0], "tau": [1.0]},
            "sigma_perturbation": {"expr": "s", "scales": [0.1]}}
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(spec))
    rc = main(["sweep", str(spec_path), "-o", str(tmp_path / "x.csv")])
    assert rc == 2


def test_sweep_rejects_unknown_family(tmp_path):
    spec = {"family": "nonsense", "domain": [0.0, 1.0],
            "parameters": {"kappa": [1.0]}}
    spec_path = tmp_path / "sweep.json"
    spec_path.write_text(json.dumps(spec))
    rc = main(["sweep", str(spec_path), "-o", str(tmp_path / "x.csv")])
    assert rc == 2


def test_console_script_is_installed(circle_file):
    proc = subprocess.run([sys.executable, "-m", "lcl.cli", "classify",
                           circle_file], capture_output=True, text=True)
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["label"] == "circle"
