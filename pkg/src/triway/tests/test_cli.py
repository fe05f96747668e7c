"""
Tests for the `triway` command.
"""

import json

import pytest
from pytest import approx

from triway.cli import main
from triway.sweep import CSV_COLUMNS


def _run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_region(capsys):
    status, out, _ = _run(capsys, "region", "--snr", "4,16,64", "--which", "thm1")
    assert status == 0
    doc = json.loads(out)
    assert [b["rhs"] for b in doc["bounds"]] == approx([2, 2, 3, 3, 4, 3, 3, 4])
    assert doc["kind"] == "Approx"


def test_gap(capsys):
    status, out, _ = _run(capsys, "gap", "--snr", "10,100,1000", "--n3", "5", "--grouped")
    assert status == 0
    doc = json.loads(out)
    assert doc["N3"] == 5 and doc["grouped"] is True
    assert doc["exact_gap"] > 0


def test_gap_csv(capsys):
    status, out, _ = _run(capsys, "gap", "--snr", "10,100,1000", "--n3", "4", "--format", "csv")
    assert status == 0
    header, row = out.strip().split("\n")
    assert header.split(",") == list(CSV_COLUMNS)


def test_ordering_error(capsys):
    status, out, err = _run(capsys, "region", "--snr", "100,10,1000")
    assert status == 2
    assert out == ""
    assert json.loads(err)["error"] == "ordering"


def test_usage_errors(capsys):
    status, _, err = _run(capsys, "frobnicate")
    assert status == 2
    assert json.loads(err)["error"] == "usage"
    status, _, err = _run(capsys)
    assert status == 2
    status, _, err = _run(capsys, "region", "--snr", "4,16,64", "--format", "csv")
    assert status == 2
    assert json.loads(err)["error"] == "usage"


def test_alloc(capsys):
    status, out, _ = _run(capsys, "alloc", "--n-tilde", "7,5,3", "--demand", "1,0,1,0,0,0")
    assert status == 0
    doc = json.loads(out)
    assert doc["feasible"] is True
    assert doc["allocation"]["N1"] == 1


def test_alloc_infeasible(capsys):
    status, _, err = _run(capsys, "alloc", "--n-tilde", "7,5,3", "--demand", "0,4,0,0,0,0")
    assert status == 2
    assert json.loads(err)["error"] == "infeasible"


def test_simulate_from_config(capsys, tmp_path):
    cfg = tmp_path / "sim.json"
    cfg.write_text(json.dumps({"N_tilde": [7, 5, 3], "demand": "0,3,4,0,0,0", "q": 16, "blocks": 2,
                               "seed": 4}))
    status, out, _ = _run(capsys, "simulate", "--config", str(cfg))
    assert status == 0
    assert json.loads(out)["success"] is True
    status, out, _ = _run(capsys, "simulate", "--config", str(cfg), "--format", "jsonl")
    assert status == 0
    recs = [json.loads(line) for line in out.strip().split("\n")]
    assert {r["dir"] for r in recs} == {"up", "down", "rx"}


def test_simulate_flag_overrides_config(capsys, tmp_path):
    cfg = tmp_path / "sim.json"
    cfg.write_text(json.dumps({"N_tilde": [7, 5, 3], "demand": "0,4,0,0,0,0"}))
    status, out, _ = _run(capsys, "simulate", "--config", str(cfg), "--demand", "1,0,1,0,0,0",
                          "--decode-log")
    assert status == 0
    doc = json.loads(out)
    assert doc["success"] is True and doc["log"]


def test_sweep_csv_to_file(capsys, tmp_path):
    out_file = tmp_path / "sweep.csv"
    status, out, _ = _run(capsys, "sweep", "--decades", "5", "6", "--format", "csv", "--threads", "1",
                          "--out", str(out_file))
    assert status == 0
    assert out == ""
    lines = out_file.read_text().strip().split("\n")
    assert lines[0].split(",") == list(CSV_COLUMNS)
    # one ungrouped and one grouped row per point
    assert len(lines) == 5


def test_special_list_and_adaptation(capsys):
    status, out, _ = _run(capsys, "special", "--list")
    assert status == 0
    listing = json.loads(out)
    assert "MAC_CONF" in listing["scenarios"]
    assert set(listing["parameters"]) == set(listing["scenarios"])
    assert set(listing["parameters"]["BC_COOP"]) == {"beta2", "beta31", "beta32"}
    status, out, _ = _run(capsys, "adaptation", "--g1", "3", "--g2", "1024")
    assert status == 0
    assert json.loads(out)["adaptation_gap"] >= 0


@pytest.mark.parametrize("topology", ["p2p", "many-to-one", "one-to-many"])
def test_scd(capsys, topology):
    status, _, _ = _run(capsys, "scd", "--gammas", "4096,512,64", "--levels", "4", "--topology", topology,
                        "--kappa", "2")
    assert status == 0
