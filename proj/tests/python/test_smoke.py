import math

import pytest

import ultrakit as uk


def test_gevrey_conditions():
    M = uk.gevrey(1.0, 64)
    c = uk.check_conditions(M)
    assert c["m1"]
    assert c["m2prime"]["H"] == pytest.approx(2.0)
    # sup_p t^p / p! at t = 1 is attained at p in {0, 1}.
    assert uk.associated_function(M, 1.0) == pytest.approx(0.0, abs=1e-14)


def test_gaussian_convolution_closed_form():
    g = uk.GaussSum.gaussian(math.pi)
    h = uk.convolve(g, g)
    assert h(0.0).real == pytest.approx(2 ** -0.5, rel=1e-14)
    assert uk.GaussSum.parse(g.format())(0.3) == g(0.3)


def test_window_and_reconstruction():
    psi = uk.window_from_gaussian(math.pi)
    assert uk.inner_l2(psi, psi).real == pytest.approx(1.0, abs=1e-10)
    f = uk.standard_fixtures()["shifted"]
    assert uk.reconstruction_error(f, probes=[-1.0, 0.0, 1.5]) <= 1e-6


def test_space_norm():
    g = uk.GaussSum.gaussian(math.pi)
    assert uk.space_norm("lp:2:const", g)["value"] == pytest.approx(2 ** -0.25, rel=1e-9)
    with pytest.raises(ValueError):
        uk.space_norm("lp:0:const", g)


def test_riemann_scheme():
    with pytest.raises(ValueError):
        uk.RiemannScheme(1.0, 2, 0.5)
    g = uk.GaussSum.gaussian(math.pi)
    s = uk.RiemannScheme(6.0, 64, 1.0 / (2 * 64 * 64))
    assert uk.riemann_convolve(g, g, s)(0.0).real == pytest.approx(2 ** -0.5, rel=0.02)
    study = uk.convergence_study(g, g, uk.default_schedule(2), alpha_max=2)
    assert len(study["rows"]) == 2
    assert all(r["bound_holds"] for r in study["rows"])


def test_criterion_one():
    out = uk.run_criterion(1)
    assert out["passed"]
    assert out["metrics"]["lambda"] == pytest.approx(0.5, abs=1e-12)
