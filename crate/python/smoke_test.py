"""Smoke test for the Python bindings. Build them first with `maturin develop -m crates/py/Cargo.toml`."""

import math

import pytest

import limcycle


def test_defaults():
    p = limcycle.SystemParams()
    assert p.n == 12 and p.mu == 6 and p.beta == 6
    assert p.critical_energies() == pytest.approx((0.0, 2.0, 3.0, 8.4))
    assert len(p.singular_points()) == 9
    assert p.classify(2.5) == [3]


def test_invalid_params():
    with pytest.raises(ValueError):
        limcycle.SystemParams(a=0.6, b=0.5)


def test_lambda2_small_h():
    cu, cv, area = limcycle.lambda_j(2, 0.01, limcycle.SystemParams(n=10))
    assert cu == pytest.approx(-0.001875, abs=5e-5)
    assert area == pytest.approx(math.pi * 0.01 / 2, rel=1e-2)


def test_out_of_range():
    with pytest.raises(ValueError):
        limcycle.lambda_j(3, 1.5)


def test_table_and_bands():
    rows = limcycle.detection_table(4, [4.0, 6.0, 8.2], limcycle.SystemParams(n=10))
    assert rows[-1][1] / 1e4 == pytest.approx(1.6041, rel=1e-3)
    totals = [b["total"] for b in limcycle.bands()]
    assert [4, 5, 9, 11, 13, 9] == totals[totals.index(13) - 4 : totals.index(13) + 2]


def test_distribution_and_verify():
    found = limcycle.distribution(289.5)
    assert sum(f["count"] for f in found) == 13
    p = limcycle.SystemParams(u=1.0, v=0.0)
    recs = limcycle.verify(-0.1, p, epsilon=1e-3, family_index=2)
    assert [r["predicted"] for r in recs] == ["stable", "unstable"]
    assert all(r["verified"] for r in recs)
