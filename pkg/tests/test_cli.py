from __future__ import annotations

import json

import pytest

from overcommute import certio
from overcommute.cli import main
from overcommute.torus import torus_knot


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_verify_good_bad_and_malformed(capsys, tmp_path):
    cert = torus_knot(2, 3).commutator_product
    good = tmp_path / "good.json"
    certio.save(cert, good)
    code, rep = run_json(capsys, "verify", str(good))
    assert code == 0 and rep["results"]["verified"] and rep["results"]["cost"] == 1

    d = certio.to_json(cert)
    d["factors"][0]["sign"] = -d["factors"][0]["sign"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, rep = run_json(capsys, "verify", str(bad))
    assert code == 1 and rep["results"]["residual_length"] > 0

    junk = tmp_path / "junk.json"
    junk.write_text("{}")
    assert run(capsys, "verify", str(junk))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2


def test_torus_knot(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, rep = run_json(capsys, "torus-knot", "-p", "3", "-q", "5", "--cert-out", str(out))
    r = rep["results"]
    assert code == 0 and r["cl_R_cost"] == 1 and r["l_S_cost"] == 2 and r["genus_bound"] == 2
    assert certio.verify_any(certio.load(out)).ok
    assert run(capsys, "torus-knot", "-p", "2", "-q", "4")[0] == 2


def test_alexander_defaults(capsys):
    code, rep = run_json(capsys, "alexander")
    r = rep["results"]
    assert code == 0
    assert r["boundary_divisible"] and not r["cyclic"] and r["delta_at_1/u"] == "0"


def test_alexander_identity_matrix(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("1, 0\n0, 1\n")
    b = tmp_path / "b.txt"
    b.write_text("m: 0, 0\nl: 0, 0\n")
    code, rep = run_json(capsys, "alexander", "--matrix", str(m), "--boundary", str(b),
                         "--closed", str(m))
    assert code == 0
    assert rep["results"]["cyclic"] and rep["results"]["alexander_polynomial"] == "1"


def test_alexander_bad_matrix(capsys, tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("1, sqrt2\n")
    assert run(capsys, "alexander", "--matrix", str(m))[0] == 2


def test_psi_r2(capsys):
    code, rep = run_json(capsys, "psi", "--schema", "R2", "--params", "3,5")
    assert code == 0 and rep["results"]["cost"] == 5


def test_search_trefoil(capsys):
    code, rep = run_json(capsys, "search", "a*b^-1*a*a*b*a^-1*a^-1*a^-1",
                         "--relator", "r=a^2*b^-3", "--max-cost", "1")
    assert code == 0 and rep["results"]["cost"] == 1
    assert run(capsys, "search", "a", "--relator", "r=a^2*b^-3")[0] == 2


def test_ghys_refined_with_axiom(capsys, tmp_path):
    cert = tmp_path / "g.json"
    code, rep = run_json(capsys, "ghys", "--refined", "--axiom", "translations-xi2",
                         "--cert-out", str(cert))
    r = rep["results"]
    assert code == 0
    assert rep["results"]["refined"]["cost"] == 25
    assert certio.verify_any(certio.load(cert)).cost == 25


def test_steinberg_check_small(capsys):
    code, rep = run_json(capsys, "steinberg-check", "--samples", "5", "--seed", "3")
    assert code == 0 and rep["ok"]


def test_digest_is_deterministic(capsys, monkeypatch):
    monkeypatch.setenv("OVERCOMMUTE_SEED", "11")
    _, a = run_json(capsys, "steinberg-check", "--samples", "4")
    _, b = run_json(capsys, "steinberg-check", "--samples", "4")
    assert a["digest"] == b["digest"] and a["inputs"]["seed"] == 11
    _, c = run_json(capsys, "steinberg-check", "--samples", "4", "--seed", "12")
    assert c["digest"] != a["digest"]


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("OVERCOMMUTE_SEED", "x")
    assert run(capsys, "torus-knot", "-p", "2", "-q", "3")[0] == 2


def test_summary_mode_prints_digest(capsys):
    code, out, _ = run(capsys, "torus-knot", "-p", "2", "-q", "3")
    assert code == 0 and out.strip().splitlines()[-1].startswith("digest ")
