import numpy as np
import pytest
from scipy.integrate import dblquad, quad

from tricomi import (ParameterError, QuadratureSpec, ToleranceNotMet, UnsupportedParameters,
                     apply_K, apply_K0, apply_K1, dalembert_1d, make_params,
                     ode_oracle_separable, separable_solution, solve_cauchy,
                     source_residual_term, with_odd_trace)
from tricomi.verify.fd import Grid1D, residual_field


def _zero_solution():
    return dalembert_1d(lambda x, b: 0.0 * (x + b))


def test_zero_source_gives_zero():
    res = apply_K(_zero_solution(), make_params(1.0), 0.3, 1.0)
    assert res.value == 0.0


def test_zero_time_gives_zero():
    res = apply_K(separable_solution(1.0), make_params(1.0), np.array([0.0, 1.0]), 0.0)
    np.testing.assert_array_equal(res.value, [0.0, 0.0])


@pytest.mark.parametrize("ell", [1.0, 3.0, -4.0 / 3.0, 0.5, -1.5, 8.0])
def test_matches_ode_oracle(ell):
    p = make_params(ell)
    oracle = ode_oracle_separable(p, 1.0, lambda t: 1.0, 1.0, tol=1e-12)
    w = separable_solution(1.0)
    for t in (0.25, 0.5, 1.0):
        res = apply_K(w, p, 0.0, t)
        assert res.value == pytest.approx(oracle(t), abs=1e-9)
        assert res.est_error <= max(1e-10, 1e-10 * abs(res.value))


def test_three_dimensional_separable_source():
    k = np.array([0.6, -0.8, 0.5])
    p = make_params(1.0)
    oracle = ode_oracle_separable(p, k, lambda t: 1.0, 1.0, tol=1e-12)
    x = np.array([0.3, 0.2, -0.1])
    value = apply_K(separable_solution(k), p, x, 1.0).value
    assert value == pytest.approx(np.cos(x @ k) * oracle(1.0), abs=1e-9)


def test_array_of_points():
    p = make_params(1.0)
    xs = np.linspace(-1.0, 1.0, 7)
    w = separable_solution(1.0)
    batch = apply_K(w, p, xs, 0.8).value
    single = [apply_K(w, p, float(x), 0.8).value for x in xs]
    np.testing.assert_allclose(batch, single, rtol=1e-14, atol=1e-16)


def test_duhamel_degeneration():
    p = make_params(0.0)
    f = lambda x, b: np.sin(x) * np.exp(-b) + x * x * b  # noqa: E731
    w = dalembert_1d(f)
    for x, t in ((0.3, 0.9), (-1.2, 1.7)):
        ref, _ = dblquad(lambda r, b: w(x, r, b), 0.0, t, 0.0, lambda b: t - b,
                         epsabs=1e-13, epsrel=1e-13)
        assert apply_K(w, p, x, t).value == pytest.approx(ref, abs=1e-10)


def test_linearity():
    p = make_params(3.0)
    w1 = separable_solution(1.0, lambda b: 1.0 + b)
    w2 = dalembert_1d(lambda x, b: np.exp(-x * x) * np.cos(b))
    lhs = apply_K(w1.scaled(2.0) + w2.scaled(-0.5), p, 0.4, 1.1).value
    rhs = 2.0 * apply_K(w1, p, 0.4, 1.1).value - 0.5 * apply_K(w2, p, 0.4, 1.1).value
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_integer_gap_exponent_unsupported():
    with pytest.raises(UnsupportedParameters):
        apply_K(separable_solution(1.0), make_params(-1.0), 0.0, 1.0)


def test_tolerance_not_met_carries_estimate():
    q = QuadratureSpec(scheme="tanh_sinh", nodes=9, abs_tol=1e-15, rel_tol=1e-15)
    with pytest.raises(ToleranceNotMet) as info:
        apply_K(separable_solution(1.0), make_params(1.0), 0.0, 1.0, q)
    assert np.isfinite(info.value.value)
    assert info.value.est_error > 1e-15


def test_gauss_jacobi_rejected_for_k():
    with pytest.raises(ParameterError):
        apply_K(separable_solution(1.0), make_params(1.0), 0.0, 1.0,
                QuadratureSpec(scheme="gauss_jacobi"))


def test_residual_term_zero_profile():
    res = source_residual_term(lambda x, b: 0.0 * b, make_params(1.0), 0.0, 1.0)
    assert res.value == 0.0


def test_residual_term_ell_zero_is_plain_integral():
    h = lambda x, b: np.cos(x) * np.exp(b)  # noqa: E731
    ref, _ = quad(lambda b: h(0.4, b), 0.0, 1.3, epsabs=1e-14)
    value = source_residual_term(h, make_params(0.0), 0.4, 1.3).value
    assert value == pytest.approx(ref, rel=1e-12)


def test_residual_term_matches_grid_residual_change():
    p = make_params(1.0)
    w = separable_solution(1.0)
    w_odd = with_odd_trace(w, lambda x, b: np.ones(np.broadcast(x, b).shape))
    f = lambda x, t: np.cos(x) + 0.0 * t  # noqa: E731
    grid = Grid1D(-np.pi, np.pi, 1.0, 32, 32)
    _, tc, r1 = residual_field(lambda x, t: apply_K(w, p, x, t).value, f, p, grid)
    _, _, r2 = residual_field(lambda x, t: apply_K(w_odd, p, x, t).value, f, p, grid)
    s = np.array([source_residual_term(lambda x, b: 1.0 + 0.0 * b, p, 0.0, t).value for t in tc])
    mismatch = np.max(np.abs(r2 - r1 - s[None, :]))
    assert np.max(np.abs(s)) > 0.5
    assert mismatch <= 1e-3 * np.max(np.abs(s))


@pytest.mark.parametrize("ell", [1.0, 3.0, 0.2])
def test_k0_k1_of_constants(ell):
    p = make_params(ell)
    one = lambda x, tau: np.ones(np.broadcast(x, tau).shape)  # noqa: E731
    for t in (0.0, 0.3, 1.7):
        assert apply_K0(one, p, 0.2, t) == pytest.approx(1.0, rel=1e-13)
        assert apply_K1(one, p, 0.2, t) == pytest.approx(t, rel=1e-13, abs=1e-300)


def test_k0_initial_value():
    p = make_params(1.0)
    v = lambda x, tau: np.cos(x) * np.exp(tau)  # noqa: E731
    assert apply_K0(v, p, 0.7, 0.0) == pytest.approx(np.cos(0.7), rel=1e-14)
    assert apply_K1(v, p, 0.7, 0.0) == 0.0


@pytest.mark.parametrize("op, t", [(apply_K0, 1.0), (apply_K1, 0.5)])
def test_k0_k1_node_convergence(op, t):
    p = make_params(1.0)
    v = lambda x, tau: np.cos(tau) + 0.0 * x  # noqa: E731
    base = op(v, p, 0.0, t)
    ref = op(v, p, 0.0, t, QuadratureSpec(scheme="gauss_jacobi", nodes=400))
    assert base == pytest.approx(ref, abs=1e-10)


def test_k0_rejects_nonpositive_gamma():
    with pytest.raises(ParameterError):
        apply_K0(lambda x, tau: 1.0, make_params(0.0), 0.0, 1.0)


def test_cauchy_constant_data():
    p = make_params(1.0)
    one = separable_solution(0.0)
    zero = separable_solution(0.0, lambda b: 0.0 * np.asarray(b))
    assert solve_cauchy(one, zero, p, 0.3, 0.9) == pytest.approx(1.0, rel=1e-13)
    assert solve_cauchy(zero, one, p, 0.3, 0.9) == pytest.approx(0.9, rel=1e-13)


@pytest.mark.parametrize("ell", [1.0, 3.0])
def test_cauchy_against_ode(ell):
    p = make_params(ell)
    oracle = ode_oracle_separable(p, 1.0, lambda t: 0.0, 1.0, tol=1e-12, u0=1.0)
    w0 = separable_solution(1.0)
    w1 = separable_solution(1.0, lambda b: 0.0 * np.asarray(b))
    for t in (0.25, 0.5, 1.0):
        assert solve_cauchy(w0, w1, p, 0.0, t) == pytest.approx(oracle(t), abs=1e-9)


def test_cauchy_velocity_data_against_ode():
    p = make_params(1.0)
    oracle = ode_oracle_separable(p, 1.0, lambda t: 0.0, 1.0, tol=1e-12, u1=1.0)
    w0 = separable_solution(1.0, lambda b: 0.0 * np.asarray(b))
    w1 = separable_solution(1.0)
    for t in (0.25, 0.5, 1.0):
        assert solve_cauchy(w0, w1, p, 0.0, t) == pytest.approx(oracle(t), abs=1e-9)


def test_cauchy_requires_positive_ell():
    w = separable_solution(1.0)
    with pytest.raises(ParameterError):
        solve_cauchy(w, w, make_params(-1.0), 0.0, 1.0)
