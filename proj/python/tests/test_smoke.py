import math

import mpmath
import pytest

import sixv


def test_weights_at_symmetric_point():
    w = sixv.build_weights("pi/4")
    assert w["a_plus"] == pytest.approx(math.sqrt(2) / 2)
    assert w["c"] == pytest.approx(1.0)
    assert abs(w["delta"]) < 1e-15


def test_out_of_regime_raises():
    with pytest.raises(ValueError):
        sixv.build_weights(-0.2)


def test_single_site_partition_function():
    r = sixv.enumerate_Z(1, "pi/4", mode="brute")
    assert r["config_count"] == 2
    assert r["value"] == pytest.approx(1.0)
    mpmath.mp.dps = 60
    assert abs(mpmath.mpf(r["text"]) - 1) < mpmath.mpf("1e-45")


def test_determinant_matches_enumeration():
    args = dict(lambda_=0.5, mu=0.1, eta="pi/5", xi="pi/3")
    exact = sixv.enumerate_Z(4, **args)["value"]
    assert sixv.homogeneous_Z(4, **args)["value"] == pytest.approx(exact, rel=1e-14)
    assert sixv.tsuchiya_Z([0.55, 0.7], [0.1, -0.05], eta="pi/5")["value"] > 0


def test_correlations():
    t = sixv.enumerate_correlations(4)
    assert sum(t["H"]) == pytest.approx(1.0)
    assert t["G"][-1] == pytest.approx(1.0)


def test_generating_function_identity():
    t = sixv.enumerate_correlations(4)
    z = sixv.gamma_map(0.1)
    h = sum(c * z**i for i, c in enumerate(t["h_coeffs"]))
    assert sixv.hN_determinant(4, omega=0.1)["value"] == pytest.approx(h, rel=1e-12)


def test_asymptotics():
    assert sixv.h_rate(-math.pi / 8) == pytest.approx(-math.log(2))
    assert sixv.v_closed(4) == pytest.approx(1 / 6)
    assert sixv.contact_point(0.5) == pytest.approx(1.0, abs=1e-8)
    assert sixv.saddle_pair(0.25, 1.0) == pytest.approx((2 / 3, 2 / 3))
    assert sixv.tangent_line(0.25)["slope"] == pytest.approx(4 / 3)
    for x, y, _ in sixv.arctic_curve(50):
        assert (x - 1) ** 2 + (y - 1) ** 2 == pytest.approx(1.0, abs=1e-6)
    assert sixv.path_count(2, 3, 1 / math.sqrt(2)) == pytest.approx(25 * math.sqrt(2))


def test_toda_residuals_vanish():
    seq = sixv.tau_sequence(6, lambda_=0.3, mu=0.1, eta="pi/5", omega=0.05)
    assert all(abs(a) < 1e-30 and abs(b) < 1e-30 for _, a, b in seq["toda"])


def test_monte_carlo_is_reproducible():
    a = sixv.monte_carlo(6, seed=3, sweeps=200, burn_in=20)
    b = sixv.monte_carlo(6, seed=3, sweeps=200, burn_in=20)
    assert a["density"] == b["density"]
    assert len(a["density"]) == 13 and len(a["density"][0]) == 6
    assert a["density"][0][0] == 0.0


def test_quick_verify_passes():
    results = sixv.verify(quick=True)
    assert [r["id"] for r in results] == [1, 2, 3, 4, 6, 7, 8, 9, 10, 11]
    assert all(r["pass"] for r in results)
