"""Jacobi polynomials, the Gauss hypergeometric series and monopole harmonics.

Monopole harmonics live on two charts of the sphere: chart ``+1`` excludes the
south pole (theta = pi), chart ``-1`` the north pole (theta = 0).  On the
overlap the two representations differ by the phase ``exp(2 i q phi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, InvalidDegree, NoConvergence, OutOfChart

_SERIES_MAX_TERMS = 10_000
_SERIES_RTOL = 1e-13


def _recurrence_degenerate(n: int, alpha: float, beta: float) -> bool:
    ab = alpha + beta
    for k in range(2, n + 1):
        if 2 * k * (k + ab) * (2 * k + ab - 2) == 0:
            return True
    return False


def _binom(z: float, k: int) -> float:
    """Generalized binomial coefficient C(z, k) for real z, integer k >= 0."""
    out = 1.0
    for j in range(k):
        out *= (z - j) / (j + 1)
    return out


def jacobi_explicit(n: int, alpha: float, beta: float, x):
    """P_n^(alpha, beta)(x) from the Leibniz expansion of the Rodrigues formula.

    Stays finite for negative integer parameters, where the three-term
    recurrence divides by zero.
    """
    x = np.asarray(x, dtype=float)
    u = (x - 1.0) / 2.0
    v = (x + 1.0) / 2.0
    total = np.zeros_like(x)
    for s in range(n + 1):
        c = _binom(n + alpha, n - s) * _binom(n + beta, s)
        if c:
            total = total + c * u**s * v ** (n - s)
    return total


def jacobi_eval(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial P_n^(alpha, beta)(x) by the three-term recurrence in n."""
    if int(n) != n or n < 0:
        raise InvalidDegree(f"degree must be a non-negative integer, got {n}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x)
    if _recurrence_degenerate(n, alpha, beta):
        return jacobi_explicit(n, alpha, beta, x)
    ab = alpha + beta
    p_prev = np.ones_like(x)
    p = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        a2 = (2 * k + ab - 1) * ((2 * k + ab) * (2 * k + ab - 2) * x + alpha**2 - beta**2)
        a3 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
        p_prev, p = p, (a2 * p - a3 * p_prev) / a1
    return p


def jacobi_derivative(n: int, alpha: float, beta: float, x):
    """d/dx P_n^(alpha, beta)(x)."""
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return 0.5 * (n + alpha + beta + 1) * jacobi_eval(n - 1, alpha + 1, beta + 1, x)


@dataclass(frozen=True)
class JacobiPoly:
    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise InvalidDegree(f"degree must be a non-negative integer, got {self.n}")

    def __call__(self, x):
        return jacobi_eval(self.n, self.alpha, self.beta, x)

    def deriv(self, x):
        return jacobi_derivative(self.n, self.alpha, self.beta, x)

    def value_at_one(self) -> float:
        # Gamma(n + alpha + 1) / (n! Gamma(alpha + 1)), written as a product
        return _binom(self.n + self.alpha, self.n)


def _is_nonpositive_int(v: float) -> bool:
    return v <= 0 and v == int(v)


def _series_2f1(a: float, b: float, c: float, x: float) -> float:
    term = 1.0
    total = 1.0
    for k in range(_SERIES_MAX_TERMS):
        num = (a + k) * (b + k)
        if num == 0:
            return total
        den = (c + k) * (k + 1)
        if den == 0:
            raise DomainError(f"c = {c} is a non-positive integer and the series does not terminate")
        term *= num / den * x
        total += term
        if abs(term) <= _SERIES_RTOL * abs(total) and k > 2:
            return total
    raise NoConvergence(f"2F1({a}, {b}; {c}; {x}) did not converge in {_SERIES_MAX_TERMS} terms")


def gauss_2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1.

    Terminates exactly when ``a`` or ``b`` is a non-positive integer.  For
    negative ``x`` the Pfaff transformation maps the argument into (0, 1/2)
    so the alternating series does not cancel.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"series needs |x| < 1, got {x}")
    if _is_nonpositive_int(c) and not (
        (_is_nonpositive_int(a) and a > c) or (_is_nonpositive_int(b) and b > c)
    ):
        raise DomainError(f"c = {c} is a non-positive integer and the series does not terminate")
    if x < 0:
        if _is_nonpositive_int(b) and not _is_nonpositive_int(a):
            a, b = b, a
        return (1.0 - x) ** (-a) * _series_2f1(a, c - b, c, x / (x - 1.0))
    return _series_2f1(a, b, c, x)


# --- monopole harmonics ------------------------------------------------------


def _harmonic_indices(two_q: int, two_l: int, two_m: int) -> tuple[int, int, int]:
    """(alpha, beta, n) = (-q - m, q - m, l + m), all integers."""
    if two_l < abs(two_q) or (two_l - two_q) % 2:
        raise DomainError(f"l = {two_l}/2 not admissible for q = {two_q}/2")
    if abs(two_m) > two_l or (two_l - two_m) % 2:
        raise DomainError(f"m = {two_m}/2 not admissible for l = {two_l}/2")
    return (-two_q - two_m) // 2, (two_q - two_m) // 2, (two_l + two_m) // 2


@lru_cache(maxsize=None)
def _theta_terms(two_q: int, two_l: int, two_m: int) -> tuple[tuple[float, int, int], ...]:
    """Coefficients c_s and exponents of sin(t/2), cos(t/2) for the polar factor."""
    alpha, beta, n = _harmonic_indices(two_q, two_l, two_m)
    lmq, lpq = (two_l - two_q) // 2, (two_l + two_q) // 2
    pref = 2.0 ** ((alpha + beta) / 2)
    terms = []
    for s in range(n + 1):
        c = math.comb(lmq, n - s) * math.comb(lpq, s) if n - s <= lmq and s <= lpq else 0
        if c:
            terms.append(((-1) ** s * c * pref, 2 * s + alpha, 2 * (n - s) + beta))
    return tuple(terms)


def monopole_theta(two_q: int, two_l: int, two_m: int, theta):
    """Polar factor (1-cos t)^(alpha/2) (1+cos t)^(beta/2) P_n^(alpha,beta)(cos t), unnormalized."""
    theta = np.asarray(theta, dtype=float)
    sh, ch = np.sin(theta / 2), np.cos(theta / 2)
    out = np.zeros_like(theta)
    for c, ps, pc in _theta_terms(two_q, two_l, two_m):
        out = out + c * sh**ps * ch**pc
    return out


def harmonic_norm(two_q: int, two_l: int, two_m: int) -> float:
    """Positive constant making the harmonic unit-normalized on the sphere."""
    alpha, beta, n = _harmonic_indices(two_q, two_l, two_m)
    lmq, lpq = (two_l - two_q) // 2, (two_l + two_q) // 2
    lpm, lmm = (two_l + two_m) // 2, (two_l - two_m) // 2
    log_i = (
        (alpha + beta + 1) * math.log(2.0)
        - math.log(two_l + 1)
        + math.lgamma(lmq + 1)
        + math.lgamma(lpq + 1)
        - math.lgamma(lpm + 1)
        - math.lgamma(lmm + 1)
    )
    return math.exp(-0.5 * (log_i + math.log(2 * math.pi)))


@dataclass(frozen=True)
class HarmonicSection:
    two_q: int
    two_l: int
    two_m: int
    chart: int = 1
    norm_const: float = field(init=False)

    def __post_init__(self):
        if self.chart not in (1, -1):
            raise ValueError("chart must be +1 or -1")
        _harmonic_indices(self.two_q, self.two_l, self.two_m)
        object.__setattr__(self, "norm_const", harmonic_norm(self.two_q, self.two_l, self.two_m))

    def in_chart(self, chart: int) -> "HarmonicSection":
        return HarmonicSection(self.two_q, self.two_l, self.two_m, chart)


def harmonic_eval(section: HarmonicSection, theta, phi):
    """(Y_qlm)_chart(theta, phi) = M P(theta) exp(i (m +/- q) phi)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    excluded = math.pi if section.chart == 1 else 0.0
    if np.any(theta == excluded):
        raise OutOfChart(f"theta = {excluded} is excluded from chart {section.chart:+d}")
    polar = monopole_theta(section.two_q, section.two_l, section.two_m, theta)
    phase = np.exp(0.5j * (section.two_m + section.chart * section.two_q) * phi)
    return section.norm_const * polar * phase


def overlap_phase(two_q: int, phi):
    """Transition function Omega with (Y)_+ = Omega * (Y)_-, phi_0 = 0."""
    return np.exp(1j * two_q * np.asarray(phi, dtype=float))


def gauge_potential(two_q: int, theta, chart: int = 1):
    """phi-component of the chart potential, q (+/-1 - cos theta), in units hbar c / e."""
    return 0.5 * two_q * (chart - np.cos(np.asarray(theta, dtype=float)))


def sphere_quadrature(n_theta: int = 64, n_phi: int = 128):
    """Gauss-Legendre in cos(theta) times the trapezoid rule in phi.

    Returns (theta, phi, weight) meshes for integrating over the unit sphere.
    """
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    th = np.arccos(x)
    T, P = np.meshgrid(th, phi, indexing="ij")
    W = np.outer(w, np.full(n_phi, 2 * np.pi / n_phi))
    return T, P, W
