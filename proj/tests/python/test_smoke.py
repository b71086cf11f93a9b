import cmath
import math

import pytest

import lpbound


def test_z5_bound():
    r = lpbound.bound([5], [1, 4])
    assert r["bound"] == pytest.approx(math.sqrt(5), abs=1e-9)
    assert lpbound.brute_force_max([5], [1, 4])["cardinality"] == 2


def test_round_trip():
    values = [complex(k, -k * k) for k in range(12)]
    back = lpbound.inverse_transform([12], lpbound.fourier_transform([12], values))
    assert max(abs(a - b) for a, b in zip(values, back)) < 1e-12


def test_verify_witness():
    assert lpbound.verify_witness([5], [1, 4], [1, 0, 0, 0, 0])["valid"]
    assert not lpbound.verify_witness([5], [1, 4], [1, 0, 0.5, 0.5, 0])["valid"]


def test_asymmetric_forbidden_set():
    with pytest.raises(ValueError):
        lpbound.bound([6], [2])


def test_improve_and_corollary():
    r = lpbound.improve([6], [1, 5], [0, 3])
    assert r["improved"] and r["value"] < r["delsarte"]
    assert lpbound.corollary([6], [1, 5], [0, 3])["excluded"]
    with pytest.raises(lpbound.InfeasibleWitness):
        lpbound.improve([6], [1, 5], [0, 2, 4])


def test_mub():
    assert lpbound.torus_witness_ratio(6)["ratio"] == 36
    assert lpbound.closed_form_c() > 0.843
    chain = lpbound.optimize_c()
    assert chain["ok"]
    assert abs(chain["c_numeric"] - chain["c_closed_form"]) < 1e-6
    cert = lpbound.certify_fab(0.0, 0.0)
    assert cert["verdict"]
    rows = lpbound.sweep(2, samples=1, jobs=2)
    assert len(rows) == 4 and all(r["verdict"] for r in rows)


def test_cli():
    code, out, _ = lpbound.run_cli(["bound", "--group", "5", "--forbidden", "1,4"])
    assert code == 0 and "2.236" in out
    assert lpbound.run_cli(["bound"])[0] == 64
