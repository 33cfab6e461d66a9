"""Chart potentials: Hessians, kernels, smoothing scale, cocycle identity."""

import math
from fractions import Fraction

import numpy as np
import pytest

from maxtorus import instances
from maxtorus.quotient import projection_p
from maxtorus.tkform import (
    RHO,
    TWO_PI,
    TKFormData,
    build_tk_data,
    calibrate_rho,
    choose_smoothness_scale,
    cocycle_check,
    evaluate_phi,
    hessian_at,
    hessian_fd_oracle,
    kernel_check,
    log_phi,
)

HOPF_B = (1, 1)


def hopf_chart(sigma=(1,)):
    fan = instances.hopf_fan()
    h = instances.hopf_subspace()
    return fan, h, build_tk_data(fan, h, HOPF_B, sigma)


def one_char_data(w, cone=(), rays=((1, 0),)):
    n = len(w)
    return TKFormData(cone, (tuple(Fraction(x) for x in w),), (Fraction(0),) * n, 1, rays)


def two_char_data(w1, w2):
    n = len(w1)
    return TKFormData(
        (),
        (tuple(Fraction(x) for x in w1), tuple(Fraction(x) for x in w2)),
        (Fraction(0),) * n,
        1,
        ((1, 0),),
    )


# construction --------------------------------------------------------------


def test_build_hopf_chart():
    fan, _, data = hopf_chart((1,))
    assert data.cone == (1,) and data.dim == 3 and data.scale == 1
    assert len(data.characters) == 2
    # every character pairs nonnegatively with the chart ray
    for w in data.characters:
        assert sum(wj * Fraction(r) for wj, r in zip(w, fan.rays[0])) >= 0


def test_build_rejects_non_face():
    fan = instances.hopf_fan()
    with pytest.raises(ValueError, match="not a face"):
        build_tk_data(fan, instances.hopf_subspace(), HOPF_B, (1, 2))


def test_build_rejects_bad_certificate():
    fan = instances.hopf_fan()
    with pytest.raises(ValueError, match="weak-normality"):
        build_tk_data(fan, instances.hopf_subspace(), (0, 0), (1,))


def test_scaled():
    _, _, data = hopf_chart()
    doubled = data.scaled(2)
    assert doubled.scale == 2
    assert doubled.characters == tuple(tuple(2 * x for x in w) for w in data.characters)
    with pytest.raises(ValueError):
        data.scaled(0)


# evaluation ----------------------------------------------------------------


def test_phi_single_character():
    data = one_char_data([0, 0])
    assert evaluate_phi(data, [0.3, -0.7]) == pytest.approx(1.0)
    data = one_char_data([1, 0])
    assert log_phi(data, [0.5, 0.0]) == pytest.approx(-TWO_PI * 0.5)


def test_phi_at_origin_counts_cones():
    # every exponential equals 1 at y = 0
    _, _, data = hopf_chart(())
    assert evaluate_phi(data, np.zeros(3)) == pytest.approx(len(data.characters))


def test_phi_two_characters_closed_form():
    data = two_char_data([0, 0], [1, 0])
    y = [0.25, 0.4]
    assert evaluate_phi(data, y) == pytest.approx(1.0 + math.exp(-TWO_PI * 0.25))


# Hessian -------------------------------------------------------------------


def test_hessian_single_character_vanishes():
    data = one_char_data([3, -2])
    assert np.allclose(hessian_at(data, [0.1, 0.2]), 0.0, atol=1e-15)


def test_hessian_two_characters_at_origin():
    w1, w2 = [0, 0], [2, 1]
    data = two_char_data(w1, w2)
    hess = hessian_at(data, [0.0, 0.0])
    d = np.array([float(a - b) for a, b in zip(w1, w2)])
    assert np.allclose(hess, 0.5 * np.outer(d, d), atol=1e-12)


def test_hessian_kernel_contains_quotient_kernel():
    fan, h, data = hopf_chart()
    hess = hessian_at(data, [0.2, -0.1, 0.3])
    for v in projection_p(h):
        vv = np.array([float(x) for x in v])
        assert abs(vv @ hess @ vv) < 1e-14 * max(1.0, float(np.abs(hess).max()))


def test_fd_oracle_closed_form():
    # two characters along e1: log Phi(y) = log(1 + e^{-2 pi y1})
    data = two_char_data([0, 0], [1, 0])
    y = [0.2, 0.0]
    v = [1.0, 0.0]
    # d^2/dlam^2 log(1 + e^{-(2 pi y1 + lam)}) = e^s / (1 + e^s)^2 at s = 2 pi y1
    s = TWO_PI * 0.2
    exact = math.exp(s) / (1.0 + math.exp(s)) ** 2
    fd = hessian_fd_oracle(data, y, v)
    assert fd == pytest.approx(exact, rel=1e-8)


def test_calibration_constant():
    _, _, data = hopf_chart()
    rho = calibrate_rho(data, [0.1, -0.2, 0.05], [1.0, -1.0, 0.5])
    assert round(rho) == 2
    assert abs(rho - RHO) < 1e-6


def test_kernel_check_hopf():
    fan, h, data = hopf_chart()
    p_h = projection_p(h)
    rng = np.random.default_rng(0xA11CE)
    for _ in range(5):
        y = rng.uniform(-0.5, 0.5, size=3)
        report = kernel_check(data, y, p_h)
        assert report.passed
        assert report.kernel_basis.shape[1] == 2
        assert report.psd
        if len(report.principal_angles):
            assert float(report.principal_angles.max()) < 1e-6


def test_kernel_maximality():
    # a direction outside p(h) has strictly positive quadratic form
    fan, h, data = hopf_chart()
    hess = hessian_at(data, [0.1, 0.2, -0.3])
    v = np.array([1.0, -1.0, 0.0])  # orthogonal complement direction of p(h)
    assert float(v @ hess @ v) > 1e-6


def test_kernel_check_toric_chart_is_definite():
    fan = instances.cp2_fan()
    h = instances.zero_subspace(2)
    data = build_tk_data(fan, h, (0, 0, 1), (1,))
    report = kernel_check(data, [0.1, -0.2], [])
    assert report.passed and report.kernel_basis.shape[1] == 0


def test_scale_consistency_across_certificates():
    # two different certificates give the same kernel
    fan = instances.hopf_fan()
    h = instances.hopf_subspace()
    p_h = projection_p(h)
    for b in ((1, 1), (2, 1), (1, 3)):
        data = build_tk_data(fan, h, b, (1,))
        report = kernel_check(data, [0.15, -0.05, 0.2], p_h)
        assert report.kernel_basis.shape[1] == 2
        assert float(report.principal_angles.max()) < 1e-6


# smoothing scale -----------------------------------------------------------


def scale_fixture(pairings):
    # one ray e1 in the chart cone; characters (p, 0) pair to p with it
    chars = tuple((Fraction(p), Fraction(0)) for p in pairings)
    return TKFormData((1,), chars, (Fraction(0), Fraction(0)), 1, ((1, 0),))


def test_choose_smoothness_scale():
    assert choose_smoothness_scale(scale_fixture([0, Fraction(1, 2), 2]), 2) == 4
    assert choose_smoothness_scale(scale_fixture([0, 3]), 2) == 1
    assert choose_smoothness_scale(scale_fixture([0, 0]), 5) == 1
    with pytest.raises(ValueError, match="positive"):
        choose_smoothness_scale(scale_fixture([1]), 0)
    with pytest.raises(ValueError, match="dual cone"):
        choose_smoothness_scale(scale_fixture([-1]), 1)


def test_scaled_data_meets_requested_order():
    data = scale_fixture([0, Fraction(1, 2), 2])
    kappa = choose_smoothness_scale(data, 2)
    scaled = data.scaled(kappa)
    for w in scaled.characters:
        pairing = w[0]  # pairing with e1
        assert pairing == 0 or pairing >= 2


# cocycle -------------------------------------------------------------------


def test_cocycle_same_chart_is_zero():
    fan = instances.hopf_fan()
    h = instances.hopf_subspace()
    assert cocycle_check(fan, h, HOPF_B, (1,), (1,), samples=10) == 0.0


def test_cocycle_hopf_charts():
    fan = instances.hopf_fan()
    h = instances.hopf_subspace()
    dev = cocycle_check(fan, h, HOPF_B, (1,), (2,), samples=25)
    assert dev < 1e-9


def test_cocycle_cp2_charts():
    fan = instances.cp2_fan()
    h = instances.zero_subspace(2)
    b = (0, 0, 1)
    for s1 in fan.max_cones:
        for s2 in fan.max_cones:
            assert cocycle_check(fan, h, b, s1, s2, samples=10) < 1e-9


def test_cocycle_deterministic_given_seed():
    fan = instances.hopf_fan()
    h = instances.hopf_subspace()
    a = cocycle_check(fan, h, HOPF_B, (1,), (2,), samples=10, seed=7)
    b = cocycle_check(fan, h, HOPF_B, (1,), (2,), samples=10, seed=7)
    assert a == b
