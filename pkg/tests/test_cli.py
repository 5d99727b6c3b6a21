"""Exit-code and output tests for the command-line client."""

import json

import numpy as np
import pytest

from locc_lab.cli import main
from locc_lab.corpora import builtin_document, builtin_names
from locc_lab.semiclassical import curve_csv, nc_curve


def test_analyze_exit_codes():
    assert main(["analyze", "--builtin", "product3x3"]) == 0
    assert main(["analyze", "--builtin", "bennett9"]) == 2
    assert main(["analyze", "--builtin", "nope"]) == 1


def test_usage_errors_exit_one_not_two(capsys):
    # argparse would exit 2 on its own; 2 is reserved for "indistinguishable"
    assert main(["analyze"]) == 1
    assert main(["bogus-command"]) == 1
    assert main(["analyze", "--builtin", "bennett9", "--input", "x.json"]) == 1
    err = capsys.readouterr().err
    assert "error:" in err


def test_analyze_text_output(capsys):
    code = main(["analyze", "--builtin", "paper3x4"])
    out = capsys.readouterr().out
    assert code == 2
    assert "3 x 4, 12 states, complete" in out
    assert "locally indistinguishable" in out
    assert "Round 1" in out and "Round 2" in out
    assert "psi12" in out


def test_analyze_json_output(capsys):
    code = main(["analyze", "--builtin", "dominoes2x3", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    body = json.loads(out)
    assert body["verdict"] == "distinguishable"
    assert body["dims"] == [2, 3]
    assert body["tree"]["children"]


def test_analyze_from_document_file(tmp_path, capsys):
    path = tmp_path / "set.json"
    path.write_text(json.dumps(builtin_document("product3x3")))
    assert main(["analyze", "--input", str(path)]) == 0
    capsys.readouterr()
    assert main(["analyze", "--input", str(tmp_path / "missing.json")]) == 1


def test_output_file_writing(tmp_path):
    target = tmp_path / "report.json"
    code = main(["analyze", "--builtin", "bennett9", "--format", "json", "--out", str(target)])
    assert code == 2
    body = json.loads(target.read_text())
    assert body["verdict"] == "indistinguishable"


def test_quantumness_subset(capsys):
    code = main(
        ["quantumness", "--builtin", "bennett9", "--side", "A", "--states", "psi1,psi6,psi8"]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "pops-side-A" in out
    total = float(out.split("Total N: ")[1].splitlines()[0])
    np.testing.assert_allclose(total, 2.0 + np.sqrt(3) / 2, atol=1e-9)


def test_quantumness_source_exclusivity(capsys):
    assert main(["quantumness"]) == 1
    assert main(["quantumness", "--builtin", "bennett9", "--rho-x", "0.5"]) == 1
    capsys.readouterr()


def test_quantumness_rho_x_json(capsys):
    code = main(["quantumness", "--rho-x", "0.5", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    body = json.loads(out)
    np.testing.assert_allclose(body["total"], (2.0 / 9.0) * 0.5 * np.sqrt(0.75), atol=1e-9)


def test_quantumness_document_kinds(tmp_path, capsys):
    qc_doc = {
        "kind": "qc",
        "flag_dim": 2,
        "blocks": [
            [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
            [[[0.25, 0.0], [0.25, 0.0]], [[0.25, 0.0], [0.25, 0.0]]],
        ],
    }
    path = tmp_path / "qc.json"
    path.write_text(json.dumps(qc_doc))
    assert main(["quantumness", "--input", str(path), "--format", "json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["scope"] == "qc-blocks"
    np.testing.assert_allclose(body["total"], 0.25, atol=1e-12)


def test_curve_csv_output(capsys, tmp_path):
    assert main(["curve", "--samples", "5"]) == 0
    out = capsys.readouterr().out
    assert out == curve_csv(nc_curve(5))
    target = tmp_path / "curve.csv"
    assert main(["curve", "--samples", "5", "--out", str(target)]) == 0
    assert target.read_text() == out


def test_curve_rejects_bad_samples(capsys):
    assert main(["curve", "--samples", "1"]) == 1
    capsys.readouterr()


def test_oracle_exit_and_text(capsys):
    code = main(["oracle"])
    out = capsys.readouterr().out
    assert code == 0
    assert "disagreements: 0" in out
    for name in builtin_names():
        assert name in out


def test_oracle_random_sweep_json(capsys):
    code = main(["oracle", "--random", "2", "--dims", "2x2", "--seed", "3", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    body = json.loads(out)
    assert len(body["cases"]) == 2
    assert body["disagreements"] == 0
    capsys.readouterr()
    # builtins stay in the run when named explicitly
    code = main(["oracle", "--builtin", "bennett9", "--random", "1", "--format", "json"])
    body = json.loads(capsys.readouterr().out)
    assert code == 0
    assert [c["name"] for c in body["cases"]][0] == "bennett9"
    assert len(body["cases"]) == 2


def test_oracle_bad_dims(capsys):
    assert main(["oracle", "--random", "1", "--dims", "wide"]) == 1
    capsys.readouterr()


def test_oracle_disagreement_exit_code(monkeypatch, capsys):
    from locc_lab.service import handlers, models

    def fake(req):
        case = models.OracleCase(
            name="synthetic",
            dims=(2, 2),
            procedure_distinguishable=True,
            witness_found=True,
            witness=[0, 1, 2, 3],
            agree=False,
        )
        return models.OracleResponse(cases=[case], disagreements=1)

    monkeypatch.setattr(handlers, "oracle", fake)
    assert main(["oracle"]) == 3
    assert "agree=NO" in capsys.readouterr().out


def test_examples_dump(capsys):
    assert main(["examples"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert sorted(body) == builtin_names()
    assert main(["examples", "--name", "bennett9"]) == 0
    one = json.loads(capsys.readouterr().out)
    assert one == builtin_document("bennett9")
    assert main(["examples", "--name", "nope"]) == 1


def test_tol_env_override(monkeypatch, capsys):
    monkeypatch.setenv("LOCC_LAB_TOL", "not-a-number")
    assert main(["curve", "--samples", "2"]) == 1
    assert "LOCC_LAB_TOL" in capsys.readouterr().err
    monkeypatch.setenv("LOCC_LAB_TOL", "-1")
    assert main(["curve", "--samples", "2"]) == 1
    capsys.readouterr()
    monkeypatch.setenv("LOCC_LAB_TOL", "1e-6")
    assert main(["curve", "--samples", "2"]) == 0
    capsys.readouterr()
    # explicit flag beats the environment
    monkeypatch.setenv("LOCC_LAB_TOL", "not-a-number")
    assert main(["curve", "--samples", "2", "--tol", "1e-8"]) == 0
    capsys.readouterr()


def test_analyze_respects_max_rounds(capsys):
    assert main(["analyze", "--builtin", "paper3x4", "--max-rounds", "1"]) == 1
    capsys.readouterr()


def test_server_dispatch_goes_over_http(monkeypatch, capsys):
    import httpx
    from fastapi.testclient import TestClient

    from locc_lab.service import app

    tc = TestClient(app)
    seen = []

    def fake_request(method, url, json=None, timeout=None):
        assert url.startswith("http://fake")
        seen.append(url)
        return tc.request(method, url[len("http://fake"):], json=json)

    monkeypatch.setattr(httpx, "request", fake_request)
    assert main(["analyze", "--builtin", "bennett9", "--server", "http://fake"]) == 2
    out = capsys.readouterr().out
    assert "locally indistinguishable" in out
    assert seen == ["http://fake/analyze"]
    assert main(["examples", "--name", "bennett9", "--server", "http://fake"]) == 0
    assert json.loads(capsys.readouterr().out)["states"]
    assert main(["curve", "--samples", "3", "--server", "http://fake"]) == 0
    assert capsys.readouterr().out.startswith("x,N\n")
