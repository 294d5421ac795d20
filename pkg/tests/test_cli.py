import json

import pytest

from hermlift.cli import main


def run(args):
    return main(args)


def test_usage_error_non_fundamental(capsys):
    assert run(["verify", "--D", "12", "--mode", "gauss"]) == 2
    err = capsys.readouterr().err
    assert "not a fundamental discriminant" in err


def test_usage_error_level_not_coprime():
    assert run(["verify", "--D", "3", "--N", "6", "--mode", "gauss"]) == 2


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as ei:
        run(["frobnicate"])
    assert ei.value.code == 2


def test_gauss_report(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["gauss", "--D", "15", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["ok"] and rep["components"] == [3, 5, 15]


def test_verify_salie_stdout(capsys):
    assert run(["verify", "--D", "7", "--mode", "salie"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["mode"] == "salie" and rep["checked"] > 0


def test_verify_criterion_small(capsys):
    assert run(["verify", "--D", "3", "--N", "2", "--mode", "criterion",
                "--seed", "5"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["failures"] == [] and rep["seed"] == 5


def test_campaign_config(tmp_path):
    cfg = tmp_path / "campaign.json"
    outdir = tmp_path / "reports"
    cfg.write_text(json.dumps({
        "discriminants": [3, 8],
        "levels": [1],
        "modes": ["gauss", "normsum"],
        "arithmetic": "exact",
        "output_dir": str(outdir) + "/",
    }))
    assert run(["verify", "--config", str(cfg)]) == 0
    names = sorted(p.name for p in outdir.iterdir())
    assert names == ["gauss-D3-N1.json", "gauss-D8-N1.json",
                     "normsum-D3-N1.json", "normsum-D8-N1.json"]
    for p in outdir.iterdir():
        assert json.loads(p.read_text())["ok"]


def test_hecke_reps_emission(tmp_path):
    out = tmp_path / "reps.json"
    assert run(["hecke-reps", "--D", "3", "--p", "2", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["count"] == rep["expected"] == 27
    assert len(rep["reps"]) == 27


def test_hecke_reps_rejects_split_prime():
    assert run(["hecke-reps", "--D", "3", "--p", "7"]) == 2


def test_lift_table(tmp_path):
    out = tmp_path / "lift.json"
    assert run(["lift", "--D", "3", "--k", "8", "--upto", "2",
                "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["entries"]
    for e in rep["entries"][:20]:
        assert e["Ddet"] >= 0


def test_theta_matrix_output(capsys):
    assert run(["theta-matrix", "--D", "3", "--sigma", "0", "-1", "1", "0"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert len(rep["matrix"]) == 3 and len(rep["matrix"][0]) == 3


def test_ikeda_subcommand(capsys):
    assert run(["ikeda", "--D", "7", "--k", "8", "--ell", "2",
                "--bound", "40"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["plus"] and len(rep["coeffs"]) == 40
