"""
Unit tests for the command-line front end.
"""
import dataclasses
import json

import pandas as pd
import pytest

from parrondo_lab import __version__, gallery
from parrondo_lab.cli import main
from parrondo_lab.gallery import gallery_get
from parrondo_lab.mapfile import load_map_file, write_map_file
from parrondo_lab.planar import PlanarPolyMap
from parrondo_lab.stability1d import RULE_STABILITY_CONSTANT


def _json(capsys, argv):
    code = main(["--json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_analyze_composition(capsys):
    """Test the JSON report for the composition of a gallery system."""
    code, report = _json(capsys, ["analyze", "e-f1f2f3"])
    assert code == 0
    assert set(report) == {
        "input", "constants", "verdict", "theorem", "order_decided"
    }
    assert report["input"] == "e-f1f2f3"
    assert report["verdict"] == "Repeller"
    assert report["theorem"] == RULE_STABILITY_CONSTANT
    assert report["order_decided"] == 5
    assert report["constants"]["jet"] == ["-1", "0", "0", "90", "-48"]
    assert report["constants"]["deciding"] == [5, "96"]
    assert report["constants"]["W"]["3"] == "0"


def test_analyze_single_map(capsys):
    """Test --map on a system and the text output."""
    code, report = _json(capsys, ["analyze", "e-f1f2f3", "--map", "1"])
    assert code == 0
    assert report["input"] == "e-f1f2f3 (map 1)"
    assert report["verdict"] == "LAS"
    assert report["constants"]["deciding"] == [5, "-4"]

    assert main(["analyze", "e-f1f2f3", "--map", "2"]) == 0
    out = capsys.readouterr().out
    assert "W_5 = -18" in out
    assert "verdict: LAS" in out

    assert main(["analyze", "e-f1f2f3", "--map", "4"]) == 2


def test_analyze_planar_and_linear(capsys):
    """Test planar and linear reports."""
    code, report = _json(capsys, ["analyze", "ex-dim2-1"])
    assert code == 0
    assert report["verdict"] == "Repeller"
    assert report["order_decided"] == 3
    assert report["constants"]["V1"] > 0

    code, report = _json(capsys, ["analyze", "lin1"])
    assert report["verdict"] == "Saddle"
    assert report["theorem"] == "linearization"
    assert report["constants"]["product"] == [[0.0, 1.0], [0.0, 4.0]]

    code, report = _json(capsys, ["analyze", "lin1", "--map", "1"])
    assert report["verdict"] == "HyperbolicAttracting"


def test_parrondo(capsys):
    """Test the Parrondo report for 1-D, planar and linear systems."""
    code, report = _json(capsys, ["parrondo", "e-F1F2F3"])
    assert code == 0
    assert report["paradox"] == "RepellersToLAS"
    assert [row["map"] for row in report["rows"]] == [
        "f1", "f2", "f3", "composition"
    ]
    assert report["composition_jet"] == ["-1", "0", "0", "90", "48"]

    code, report = _json(capsys, ["parrondo", "ex-dim2-2"])
    assert report["paradox"] == "RepellersToLAS"
    assert len(report["composition_lambda"]) == 2

    code, report = _json(capsys, ["parrondo", "lin1"])
    assert report["paradox"] == "None"

    assert main(["parrondo", "g-123-reversed"]) == 0
    out = capsys.readouterr().out
    assert "paradox: None" in out
    assert "composition: -x + 90x^4 - 72x^5 + O(6)" in out


def test_map_file_input(tmp_path, capsys):
    """Test that map files are read from disk."""
    path = tmp_path / "glue.json"
    write_map_file(gallery_get("glue-semi-as").system, path)
    code, report = _json(capsys, ["analyze", str(path)])
    assert code == 0
    assert report["verdict"] == "SemiASLeft"
    assert report["order_decided"] == 2


def test_input_errors(tmp_path, capsys):
    """Test exit code 2 for unusable input."""
    assert main(["analyze", str(tmp_path / "missing.json")]) == 2
    assert "MapFileError" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "map1d", "coeffs": [-1, 0.5]}')
    assert main(["analyze", str(bad)]) == 2
    assert "coeffs[1]" in capsys.readouterr().err

    assert main(["simulate", "e-f1f2f3", "--x0=0.1,0.2"]) == 2
    assert main(["gallery"]) == 2
    assert main(["gallery", "no-such-entry"]) == 2
    assert main(["analyze", "unbounded"]) == 2


def test_invalid_tolerance(monkeypatch, capsys):
    """Test that an unusable tolerance is a configuration error."""
    monkeypatch.setenv("PARRONDO_LAB_TOL", "tiny")
    assert main(["analyze", "lin1"]) == 2
    assert "ConfigurationError" in capsys.readouterr().err
    assert main(["--tol", "1e-9", "analyze", "lin1"]) == 0


def test_domain_error(tmp_path, capsys):
    """Test exit code 3 for a violated precondition."""
    sheared = PlanarPolyMap.from_terms(
        [(1, 0, 1), (0, 1, 1)], [(0, 1, 1)]
    )
    path = tmp_path / "sheared.json"
    write_map_file(sheared, path)
    assert main(["analyze", str(path)]) == 3
    assert "NotEllipticRotationForm" in capsys.readouterr().err


def test_gallery(capsys):
    """Test the gallery command in text and JSON mode."""
    assert main(["gallery", "lin2"]) == 0
    out = capsys.readouterr().out
    assert "lin2: pass" in out

    code, report = _json(capsys, ["gallery", "--all"])
    assert code == 0
    assert all(report["entries"].values())
    assert len(report["entries"]) == 9


def test_gallery_failure_exit_code(monkeypatch, capsys):
    """Test that a failing entry is an internal invariant breach."""
    lin1 = gallery.gallery_get("lin1")
    corrupted = dataclasses.replace(
        lin1, expected=dict(lin1.expected, paradox="RepellersToLAS")
    )
    monkeypatch.setattr(gallery, "gallery_get", lambda name: corrupted)
    assert main(["gallery", "lin1"]) == 4
    captured = capsys.readouterr()
    assert "lin1: FAIL" in captured.out
    assert "GalleryCheckFailed" in captured.err
    assert "lin1" in captured.err


def test_construct_then_detect(tmp_path, capsys):
    """Test writing a construction and running the detector on it."""
    path = tmp_path / "triple.json"
    argv = [
        "construct", "one-d", "--a22", "5", "--A1sq", "2", "--A2sq", "9",
        "--A3sq", "1", "--a23", "2", "--a4", "0", "--out", str(path),
    ]
    assert main(argv) == 0
    assert load_map_file(path) == gallery_get("e-f1f2f3").system

    code, report = _json(capsys, ["parrondo", str(path)])
    assert report["paradox"] == "LASToRepeller"

    assert main(["construct", "two-d", "--t", "1", "--s", "-3",
                 "--u", "-1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["type"] == "system"
    assert len(doc["maps"]) == 2


def test_simulate(tmp_path, capsys):
    """Test the simulate command with and without a starting point."""
    code, report = _json(
        capsys, ["simulate", "lin2", "--iters", "2000", "--samples", "2"]
    )
    assert code == 0
    assert report["empirical_verdict"] == "AttractingAll"
    assert len(report["samples"]) == 2

    trace = tmp_path / "trace.csv"
    code, report = _json(capsys, [
        "simulate", "e-f1f2f3", "--x0=0.001", "--iters", "6",
        "--trace", str(trace),
    ])
    assert report["status"] == "MaxedOut"
    assert report["iteration"] == 6
    assert "empirical_verdict" not in report
    frame = pd.read_csv(trace)
    assert list(frame.columns) == ["step", "map_index", "x"]
    assert len(frame) == 7


def test_unwritable_trace(tmp_path, capsys):
    """Test that a trace path that cannot be written is an input error."""
    trace = tmp_path / "missing" / "trace.csv"
    code = main([
        "simulate", "e-f1f2f3", "--x0=0.001", "--iters", "6",
        "--trace", str(trace),
    ])
    assert code == 2
    assert "Cannot write trace" in capsys.readouterr().err
    assert not trace.exists()


def test_simulate_unbounded(capsys):
    """Test the unbounded-orbit check from the command line."""
    code, report = _json(capsys, ["simulate", "unbounded", "--iters", "20"])
    assert code == 0
    assert report["a0"] == pytest.approx(-0.7959, abs=1e-4)
    assert len(report["rows"]) == 21
    assert report["max_residual"] < 1e-8


def test_version(capsys):
    """Test the --version flag."""
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_command_edge_cases(tmp_path, capsys):
    """Test identity, singleton, undecided and zero-start inputs."""
    identity = tmp_path / "identity.json"
    identity.write_text('{"type": "map1d", "coeffs": [1]}')
    code, report = _json(capsys, ["analyze", str(identity)])
    assert code == 0
    assert report["verdict"] == "UndeterminedAtOrder"
    assert "W" not in report["constants"]

    single = tmp_path / "single.json"
    single.write_text('{"type": "map1d", "coeffs": [-1, 3, -9, 0, 164]}')
    code, report = _json(capsys, ["parrondo", str(single)])
    assert report["paradox"] == "None"
    assert [row["map"] for row in report["rows"]] == ["f1", "composition"]

    undecided = tmp_path / "undecided.json"
    assert main([
        "construct", "one-d", "--a22", "1", "--A1sq", "2", "--A2sq", "9",
        "--A3sq", "1", "--a23", "2", "--a4", "0", "--out", str(undecided),
    ]) == 0
    code, report = _json(capsys, ["parrondo", str(undecided)])
    assert code == 0
    assert report["paradox"] == "Indeterminate"

    code, report = _json(capsys, ["simulate", "e-f1f2f3", "--x0=0"])
    assert report["status"] == "Converged"
    assert report["iteration"] == 0


def test_parabolic_planar_map(tmp_path, capsys):
    """Test that a planar map with eigenvalue -1 is refused."""
    flip = tmp_path / "flip.json"
    flip.write_text(
        '{"type": "map2d", "P": [[1, 0, -1], [3, 0, 1]], '
        '"Q": [[0, 1, -1]]}'
    )
    assert main(["analyze", str(flip)]) == 3
    assert "parabolic" in capsys.readouterr().err
