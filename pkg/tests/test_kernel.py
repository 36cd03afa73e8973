import numpy as np
import pytest

from tricomi import (KernelPoint, ParameterError, SingularKernelError, alpha_beta, kernel_E,
                     kernel_pde_residual, lemma22_derivatives, lemma23_coefficients, make_params,
                     phi)
from tricomi.kernel import beta_r_alternate
from tricomi.verify.oracles import alpha_beta_fd, alpha_beta_mp, kernel_mp
from tricomi.verify.suites import admissible_points, kernel_lattice


def test_point_validation():
    with pytest.raises(ParameterError):
        KernelPoint(1.0, 1.0, 0.1)
    with pytest.raises(ParameterError):
        KernelPoint(1.0, 0.5, -0.1)


def test_alpha_is_one_for_ell_zero():
    alpha, _ = alpha_beta(make_params(0.0), KernelPoint(1.3, 0.4, 0.2))
    assert alpha == 1.0


def test_beta_vanishes_on_characteristic():
    p = make_params(1.0)
    r = phi(p, 1.0) - phi(p, 0.3)
    _, beta = alpha_beta(p, KernelPoint(1.0, 0.3, r))
    assert abs(beta) <= 1e-16


def test_alpha_beta_extended_precision():
    p = make_params(1.0)
    alpha, beta = alpha_beta(p, KernelPoint(1.0, 0.25, 0.1))
    ref_a, ref_b = alpha_beta_mp(1.0, 1.0, 0.25, 0.1)
    assert alpha == pytest.approx(ref_a, rel=1e-14)
    assert beta == pytest.approx(ref_b, rel=1e-13)


@pytest.mark.parametrize("ell", [1.0, 3.0, 0.5, -4.0 / 3.0, -1.5, 10.0])
def test_one_minus_beta_identity(ell):
    p = make_params(ell)
    for k in admissible_points(p, np.random.default_rng(2), 50):
        pt, pb = phi(p, k.t), phi(p, k.b)
        d = (pt + pb) ** 2 - k.r ** 2
        _, beta = alpha_beta(p, k)
        # forming 1 - beta from a rounded beta costs a few ulp of D
        floor = 4.0 * np.finfo(float).eps * d
        assert abs((1.0 - beta) * d - 4.0 * pt * pb) <= 1e-12 * 4.0 * pt * pb + floor


def test_singular_set_rejected():
    p = make_params(1.0)
    r = phi(p, 1.0) + phi(p, 0.5)
    with pytest.raises(SingularKernelError):
        kernel_E(p, KernelPoint(1.0, 0.5, r))


def test_kernel_constant_for_ell_zero():
    p = make_params(0.0)
    for k in kernel_lattice(p, 3):
        assert kernel_E(p, k) == 1.0


def test_kernel_polynomial_for_gamma_minus_one():
    p = make_params(-4.0 / 3.0)
    for k in admissible_points(p, np.random.default_rng(3), 40):
        pt, pb = phi(p, k.t), phi(p, k.b)
        d = (pt + pb) ** 2 - k.r ** 2
        _, beta = alpha_beta(p, k)
        closed = p.c * d * (1.0 + beta)
        assert kernel_E(p, k) == pytest.approx(closed, rel=1e-13)


@pytest.mark.parametrize("ell", [1.0, 3.0, 0.4, -1.5])
def test_kernel_against_mpmath(ell):
    p = make_params(ell)
    for k in admissible_points(p, np.random.default_rng(4), 25):
        assert kernel_E(p, k) == pytest.approx(kernel_mp(ell, k.t, k.b, k.r), rel=1e-12)


def test_kernel_regression_value():
    # pinned after the mpmath cross-check above
    value = kernel_E(make_params(1.0), KernelPoint(1.0, 0.25, 0.1))
    assert value > 0.0
    assert value == pytest.approx(kernel_mp(1.0, 1.0, 0.25, 0.1), rel=1e-13)


def test_alpha_r_vanishes_at_axis():
    assert lemma22_derivatives(make_params(1.0), KernelPoint(1.0, 0.3, 0.0)).alpha_r == 0.0


def test_lemma22_against_finite_differences_at_point():
    p = make_params(1.0)
    cf = lemma22_derivatives(p, KernelPoint(1.0, 0.3, 0.2)).__dict__
    fd = alpha_beta_fd(1.0, 1.0, 0.3, 0.2, h=1e-5)
    for name, value in cf.items():
        assert value == pytest.approx(fd[name], rel=1e-6), name


@pytest.mark.parametrize("ell", [3.0, 1.0])
def test_beta_r_two_forms(ell):
    p = make_params(ell)
    k = KernelPoint(2.0, 0.5, 0.3)
    assert lemma22_derivatives(p, k).beta_r == pytest.approx(beta_r_alternate(p, k), rel=1e-12)


@pytest.mark.parametrize("ell, t, b, r", [(1.0, 1.0, 0.4, 0.15), (3.0, 2.0, 0.5, 0.3)])
def test_lemma23_examples(ell, t, b, r):
    p = make_params(ell)
    c = lemma23_coefficients(p, KernelPoint(t, b, r))
    g, z = p.gamma, c.z
    assert c.I / c.G == pytest.approx(-g * g, rel=1e-10)
    assert c.J / c.G == pytest.approx(1.0 - (2.0 * g + 1.0) * z, rel=1e-10)
    assert c.Y / c.G == pytest.approx(z * (1.0 - z), rel=1e-10)


def test_lemma23_z_zero_gives_y_zero():
    p = make_params(1.0)
    r = phi(p, 1.0) - phi(p, 0.4)
    c = lemma23_coefficients(p, KernelPoint(1.0, 0.4, r))
    assert abs(c.Y) <= 1e-15 * abs(c.G)


def test_lemma23_rejects_gamma_zero():
    with pytest.raises(ParameterError):
        lemma23_coefficients(make_params(0.0), KernelPoint(1.0, 0.4, 0.1))


def test_pde_residual_zero_for_ell_zero():
    res = kernel_pde_residual(make_params(0.0), KernelPoint(1.0, 0.3, 0.2))
    assert res.residual == 0.0


@pytest.mark.parametrize("ell, tol", [(-4.0 / 3.0, 1e-8), (1.0, 1e-6)])
def test_pde_residual_examples(ell, tol):
    p = make_params(ell)
    k = KernelPoint(1.0, 0.3 if ell < 0 else 0.25, 0.2 if ell < 0 else 0.1)
    res = kernel_pde_residual(p, k, h=1e-3)
    assert abs(res.residual) <= tol * res.bound


def test_pde_residual_polynomial_exact_derivatives():
    # gamma = -1: E = c (2 phi_t^2 + 2 phi_b^2 - 2 r^2), so E_tt and E_rr are explicit
    p = make_params(-4.0 / 3.0)
    t, b, r = 1.0, 0.3, 0.2
    res = kernel_pde_residual(p, KernelPoint(t, b, r))
    pt = phi(p, t)
    phi1 = t ** (p.ell / 2.0)
    phi2 = p.ell / 2.0 * t ** (p.ell / 2.0 - 1.0)
    e_tt = p.c * 4.0 * (phi1 ** 2 + pt * phi2)
    e_rr = -4.0 * p.c
    assert res.e_tt == pytest.approx(e_tt, rel=1e-7)
    assert res.e_rr == pytest.approx(e_rr, rel=1e-7)
    assert abs(e_tt - t ** p.ell * e_rr) <= 1e-12 * abs(e_tt)
