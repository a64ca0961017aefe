import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from scipy import special

from mesoatom.errors import DomainError, InvalidDegree, NoConvergence, OutOfChart
from mesoatom.specialfn import (
    HarmonicSection,
    JacobiPoly,
    gauge_potential,
    gauss_2f1,
    harmonic_eval,
    jacobi_derivative,
    jacobi_eval,
    jacobi_explicit,
    monopole_theta,
    overlap_phase,
    sphere_quadrature,
)

X = np.linspace(-0.95, 0.95, 9)
_xs = sp.Symbol("x")


def rodrigues(n, alpha, beta, x):
    """Rodrigues formula differentiated symbolically with rational parameters."""
    a, b = sp.nsimplify(alpha), sp.nsimplify(beta)
    expr = sp.diff((1 - _xs) ** (a + n) * (1 + _xs) ** (b + n), _xs, n)
    expr = expr * (1 - _xs) ** (-a) * (1 + _xs) ** (-b) / ((-2) ** n * sp.factorial(n))
    f = sp.lambdify(_xs, sp.simplify(expr), "mpmath")
    return np.array([float(f(sp.Rational(v).limit_denominator(10**12))) for v in x])


def hyp_form(n, alpha, beta, x):
    return np.array([JacobiPoly(n, alpha, beta).value_at_one() * gauss_2f1(-n, n + alpha + beta + 1, alpha + 1, (1 - v) / 2) for v in x])


@pytest.mark.parametrize("n", range(11))
@pytest.mark.parametrize("alpha,beta", [(0.5, 1.25), (-0.5, 2.0), (3.0, -0.75), (0.8, 7.5)])
def test_jacobi_three_ways(n, alpha, beta):
    rec = jacobi_eval(n, alpha, beta, X)
    rod = rodrigues(n, alpha, beta, X)
    hyp = hyp_form(n, alpha, beta, X)
    scale = np.max(np.abs(rod))
    assert np.max(np.abs(rec - rod)) <= 1e-10 * scale
    assert np.max(np.abs(hyp - rod)) <= 1e-10 * scale


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10), st.floats(-0.99, 12.0), st.floats(-0.99, 12.0), st.floats(-1.0, 1.0))
def test_jacobi_against_scipy(n, alpha, beta, x):
    ref = special.eval_jacobi(n, alpha, beta, x)
    assert jacobi_eval(n, alpha, beta, x) == pytest.approx(ref, rel=1e-9, abs=1e-9 * max(1.0, abs(ref)))


@pytest.mark.parametrize("n,alpha,beta", [(3, -1, 2), (4, -2, -1), (5, 0, -3), (2, -1, -1), (6, -3, 3)])
def test_jacobi_integer_negative_parameters(n, alpha, beta):
    # the recurrence is singular here; the explicit sum takes over
    rec = jacobi_eval(n, alpha, beta, X)
    rod = rodrigues(n, alpha, beta, X)
    assert np.allclose(rec, rod, rtol=1e-10, atol=1e-12)
    assert np.allclose(jacobi_explicit(n, alpha, beta, X), rod, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("n,alpha,beta", [(1, 0.3, 0.2), (4, 1.5, 2.5), (7, 0.0, 3.0)])
def test_jacobi_derivative(n, alpha, beta):
    h = 1e-5
    fd = (jacobi_eval(n, alpha, beta, X + h) - jacobi_eval(n, alpha, beta, X - h)) / (2 * h)
    assert np.allclose(jacobi_derivative(n, alpha, beta, X), fd, rtol=1e-7, atol=1e-7)
    assert np.allclose(JacobiPoly(n, alpha, beta).deriv(X), fd, rtol=1e-7, atol=1e-7)


def test_jacobi_value_at_one():
    for n, a, b in [(0, 1.0, 2.0), (3, 0.5, 0.5), (5, 2.0, -0.5)]:
        assert JacobiPoly(n, a, b).value_at_one() == pytest.approx(float(jacobi_eval(n, a, b, 1.0)), rel=1e-13)


@pytest.mark.parametrize("n", [-1, 1.5])
def test_invalid_degree(n):
    with pytest.raises(InvalidDegree):
        jacobi_eval(n, 0.0, 0.0, 0.5)
    with pytest.raises(InvalidDegree):
        JacobiPoly(n, 0.0, 0.0)


def test_2f1_closed_forms():
    assert gauss_2f1(1, 1, 2, 0.5) == pytest.approx(2 * math.log(2), rel=1e-13)
    assert gauss_2f1(0.5, 0.5, 1.5, 0.25) == pytest.approx(math.asin(0.5) / 0.5, rel=1e-13)
    assert gauss_2f1(-3, 2.5, 1.5, 0.7) == pytest.approx(special.hyp2f1(-3, 2.5, 1.5, 0.7), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.1, 8), st.floats(-0.9, 0.9))
def test_2f1_against_scipy(a, b, c, x):
    ref = special.hyp2f1(a, b, c, x)
    assert gauss_2f1(a, b, c, x) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_2f1_errors():
    with pytest.raises(DomainError):
        gauss_2f1(1, 1, 2, 1.0)
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 1, -2, 0.3)
    with pytest.raises(NoConvergence):
        gauss_2f1(10, 10, 1, 0.99999)


# --- monopole harmonics ------------------------------------------------------


def _all_sections(max_two_q=4, extra=3):
    for two_q in range(-max_two_q, max_two_q + 1):
        for two_l in range(abs(two_q), abs(two_q) + 2 * extra + 1, 2):
            for two_m in range(-two_l, two_l + 1, 2):
                yield two_q, two_l, two_m


@pytest.mark.parametrize("chart", [1, -1])
@pytest.mark.parametrize("two_q", range(-4, 5))
def test_orthonormality(two_q, chart):
    T, P, W = sphere_quadrature(64, 128)
    secs = [(l, m) for q, l, m in _all_sections() if q == two_q]
    vals = np.array([harmonic_eval(HarmonicSection(two_q, l, m, chart), T, P).ravel() for l, m in secs])
    gram = (vals.conj() * W.ravel()) @ vals.T
    assert np.max(np.abs(gram - np.eye(len(secs)))) < 1e-8


@pytest.mark.parametrize("two_q,two_l,two_m", list(_all_sections()))
def test_overlap_phase(two_q, two_l, two_m):
    rng = np.random.default_rng(abs(hash((two_q, two_l, two_m))) % 2**32)
    theta = rng.uniform(0.05, math.pi - 0.05, 50)
    phi = rng.uniform(0, 2 * math.pi, 50)
    sec = HarmonicSection(two_q, two_l, two_m, 1)
    plus = harmonic_eval(sec, theta, phi)
    minus = harmonic_eval(sec.in_chart(-1), theta, phi)
    assert np.max(np.abs(plus - overlap_phase(two_q, phi) * minus)) < 1e-12
    assert np.allclose(overlap_phase(two_q, phi), np.exp(2j * (two_q / 2) * phi), atol=1e-15)


def test_gauge_transform_consistent_with_overlap():
    # A_+ - A_- = 2q, the phi-derivative of the phase of Omega
    theta = np.linspace(0.1, 3.0, 7)
    for two_q in range(-4, 5):
        diff = gauge_potential(two_q, theta, 1) - gauge_potential(two_q, theta, -1)
        assert np.allclose(diff, two_q)


def legendre_oracle(l, m, theta, phi):
    """Standard Y_lm from scipy's associated Legendre function."""
    mm = abs(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi) * math.factorial(l - mm) / math.factorial(l + mm))
    y = norm * special.lpmv(mm, l, np.cos(theta)) * np.exp(1j * mm * phi)
    if m < 0:
        y = (-1) ** mm * np.conj(y)
    return y


@pytest.mark.parametrize("l", range(0, 6))
def test_q0_matches_legendre(l):
    theta = np.linspace(0.01, math.pi - 0.01, 37)
    phi = np.linspace(0, 2 * math.pi, 37)
    for m in range(-l, l + 1):
        ours = harmonic_eval(HarmonicSection(0, 2 * l, 2 * m), theta, phi)
        ref = legendre_oracle(l, m, theta, phi)
        # phase conventions differ by an overall sign at most
        sign = 1.0 if np.vdot(ref, ours).real >= 0 else -1.0
        assert np.max(np.abs(ours - sign * ref)) < 1e-10


@pytest.mark.parametrize("two_q,two_l,two_m", [(0, 2, 0), (1, 1, -1), (1, 3, 1), (2, 2, 2), (-3, 5, -1), (4, 8, 2)])
def test_eigen_equation(two_q, two_l, two_m):
    # -(1/s)(s P')' + (m + q cos)^2 / s^2 P = (l(l+1) - q^2) P, s = sin(theta)
    q, l, m = two_q / 2, two_l / 2, two_m / 2
    th = np.linspace(0.2, math.pi - 0.2, 41)
    h = 1e-4
    f = lambda t: monopole_theta(two_q, two_l, two_m, t)
    p0, pp, pm = f(th), f(th + h), f(th - h)
    d1 = (pp - pm) / (2 * h)
    d2 = (pp - 2 * p0 + pm) / h**2
    s, c = np.sin(th), np.cos(th)
    lhs = -(d2 + c / s * d1) + (m + q * c) ** 2 / s**2 * p0
    assert np.allclose(lhs, (l * (l + 1) - q * q) * p0, atol=1e-5 * np.max(np.abs(p0)))


def test_chart_exclusion():
    sec = HarmonicSection(1, 1, 1, 1)
    with pytest.raises(OutOfChart):
        harmonic_eval(sec, math.pi, 0.0)
    with pytest.raises(OutOfChart):
        harmonic_eval(sec.in_chart(-1), 0.0, 0.0)
    assert np.isfinite(harmonic_eval(sec, 0.0, 0.3))


@pytest.mark.parametrize("args", [(1, 0, 0), (0, 1, 1), (2, 2, 1), (0, 2, 4)])
def test_harmonic_domain(args):
    with pytest.raises(DomainError):
        HarmonicSection(*args)
    with pytest.raises(ValueError):
        HarmonicSection(0, 0, 0, chart=0)


def test_regular_at_allowed_pole():
    # P(theta) ~ theta^|m + q| at the north pole, where chart + is valid
    for two_q, two_l, two_m in _all_sections():
        k = abs(two_m + two_q) // 2
        t = np.array([1e-3, 2e-3])
        v = monopole_theta(two_q, two_l, two_m, np.concatenate([[0.0], t]))
        assert np.all(np.isfinite(v))
        assert v[2] / v[1] == pytest.approx(2.0**k, rel=1e-4)
        if k:
            assert v[0] == 0
