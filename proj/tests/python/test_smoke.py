"""Smoke tests for the python surface of the compiled core."""

import math

import pytest

import eftlab


def test_version():
    assert eftlab.__version__


def test_potential_and_measures():
    ball = eftlab.Domain("ball", dim=1, extent=1.0)
    spec = eftlab.PotentialSpec.parse("radialexp:alpha=1", ball)
    assert spec.eval(0.25) == pytest.approx(math.exp(-4.0))
    # a <= e^{-4} exactly on |x| <= 1/4
    assert eftlab.measure_below(spec, math.exp(-4.0)) == pytest.approx(0.5, rel=1e-10)

    tilde = eftlab.tilde_transform(eftlab.PotentialSpec.parse("const:1.0", ball), 1.0)
    assert tilde.eval(0.5) == pytest.approx(math.exp(-2.0))
    assert eftlab.default_tilde_alpha(1, 3) == pytest.approx(1.0)


def test_criterion_threshold():
    ball = eftlab.Domain("ball", dim=3, extent=1.0)
    params = eftlab.CriterionParams(1, 3)
    assert params.theta == pytest.approx(2.0 / 3.0)

    finite = eftlab.eft_criterion(eftlab.PotentialSpec.parse("radialexp:alpha=1", ball), params)
    assert finite.status == eftlab.VerdictStatus.finite

    divergent = eftlab.eft_criterion(eftlab.PotentialSpec.parse("radialexp:alpha=3", ball), params)
    assert divergent.status == eftlab.VerdictStatus.divergent


def test_engine_closed_form():
    v = eftlab.classify_improper_integral(
        lambda s: 1.0 / (s * math.log(s) ** 2), math.exp(-1.0)
    )
    assert v.status == eftlab.VerdictStatus.finite
    assert v.value == pytest.approx(1.0, rel=1e-6)


def test_sphi_membership():
    ball = eftlab.Domain("ball", dim=2, extent=1.0)
    spec = eftlab.PotentialSpec.parse("radialexp:alpha=1", ball)
    verdict = eftlab.sphi_membership(spec, eftlab.PhiFn.entropy())
    assert verdict.status == eftlab.VerdictStatus.finite


def test_orlicz_values():
    B = eftlab.NFunction.exp_remainder()
    t = eftlab.nfn_inverse(B, 1.0)
    assert B(t) == pytest.approx(1.0, rel=1e-9)
    # constant gauge on measure one
    norm = eftlab.luxemburg_norm([1.0] * 64, 1.0 / 64, B)
    assert norm == pytest.approx(1.0 / t, rel=1e-8)
    assert eftlab.holder_ratio([1.0] * 32, [1.0] * 32, 1.0 / 32, B) <= 1.0


def test_ground_state_free_problem():
    dom = eftlab.Domain("interval", extent=1.0, resolution=256)
    spec = eftlab.PotentialSpec.parse("const:0.0", dom)
    gs = eftlab.minimize_lambda1(spec, dom, m=1, q=0.5, h=1.0, extra_starts=0, max_iters=100000)
    assert gs.lambda_ == pytest.approx(math.pi**2, rel=1e-2)
    assert eftlab.linear_lambda12(spec, dom, 1.0) == pytest.approx(math.pi**2, rel=1e-2)


def test_bound_and_descent():
    hs = [10 ** (-8 + 8 * i / 64) for i in range(65)]
    lams = [h**0.75 for h in hs]
    bound = eftlab.extinction_bound(hs, lams, 1.0)
    assert bound.has_bound
    assert bound.time == pytest.approx(2.0, rel=1e-6)
    assert eftlab.ode_vanish_time(hs, lams, 1.0, 1e-3) == pytest.approx(2.0, abs=2e-3)


def test_kv_equivalence():
    integral, total, agree = eftlab.kv_agree("logpow:p=2")
    assert (integral, total, agree) == ("finite", "finite", True)


def test_simulation_extinction():
    res = eftlab.simulate("const:1.0", m=1, q=0.5, n=64, dt=1e-3, t_max=10.0)
    assert res.extinct
    assert 0.0 < res.extinction_time < 10.0
    # monotone dissipation
    assert all(b <= a + 1e-14 for a, b in zip(res.l2sq, res.l2sq[1:]))
    assert all(v == 0.0 for v in res.final_state)
