import csv
import json

import pytest

from cpsehp.cli import load_config, run
from cpsehp.model import P0
from cpsehp.nu import QuantumNumbers, energy

P0_FLAGS = ["--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01"]


def test_spectrum_json(capsys):
    code = run(["spectrum", *P0_FLAGS, "--n-max", "5", "--l-max", "3", "--format", "json"])
    assert code == 0
    records = json.loads(capsys.readouterr().out)
    assert records and set(records[0]) == {"n", "l", "E"}
    for r in records:
        assert r["E"] == energy(P0, QuantumNumbers(r["n"], r["l"]))


def test_tables_report(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run(["tables", "--table", "4", "--out", "t4.csv"]) == 0
    rows = list(csv.DictReader(open("t4.csv")))
    assert len(rows) == 84
    first = next(r for r in rows if (r["n"], r["l"], r["alpha"]) == ("0", "0", "0.01"))
    assert float(first["paper_value"]) == -0.026806820
    assert first["flag"] == "domain_error"


def test_thermo_row_count(tmp_path):
    out = tmp_path / "thermo.csv"
    args = ["thermo", "--beta-min", "-5", "--beta-max", "-0.1", "--steps", "200", "--l", "0",
            *P0_FLAGS, "--out", str(out)]
    assert run(args) == 0
    rows = list(csv.reader(open(out)))
    assert rows[0] == ["beta", "Z", "U", "S", "F", "C"]
    assert len(rows) == 201


def test_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(["superstat", *P0_FLAGS, "--beta", "-1", "--steps", "5", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_precedence(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "q.cfg"
    cfg.write_text("# P0 with a different alpha\nv1 = 0.1\nv2 = 0.02\nB = 0.2\nalpha = 0.04\n"
                   "n_max = 0\nl_max = 0\nformat = json\n")
    monkeypatch.setenv("QSOLVE_CONFIG", str(cfg))
    assert run(["spectrum"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec[0]["E"] == energy(P0.with_(alpha=0.04), QuantumNumbers(0, 0))
    assert run(["spectrum", "--alpha", "0.01"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec[0]["E"] == energy(P0, QuantumNumbers(0, 0))
    assert load_config(cfg)["alpha"] == "0.04"


def test_exit_codes(capsys):
    assert run(["spectrum", "--alpha", "-1"]) == 2
    assert run(["spectrum", "--v2", "0.2"]) == 2  # supercritical at l = 0
    assert run(["nonsense"]) == 2
    assert run([]) == 2
    assert run(["tables", "--table", "9"]) == 2
    assert run(["density", *P0_FLAGS, "--points", "1"]) == 2
    assert "usage" in capsys.readouterr().err


def test_validate_and_pekeris(capsys):
    assert run(["validate", "--v2", "0.2", "--l-max", "1"]) == 0
    out = capsys.readouterr().out
    assert "l=0" in out and "supercritical" in out
    assert run(["pekeris", "--points", "5", "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 5 and "alpha=0.01" in records[0]


def test_expval_and_density(capsys):
    assert run(["expval", *P0_FLAGS, "--n-max", "1", "--l-max", "1"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header == "n,l,E,inv_r2,screened_inv_r,inv_r,T,p2"
    assert run(["density", *P0_FLAGS, "--points", "50"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 51
