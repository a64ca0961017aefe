"""Radial profiles Q(chi) of the discrete levels and their quadratic functionals.

With ``x = 1 - exp(-2 chi)`` and ``w = 1 - x = exp(-2 chi)`` a level's radial
function is

    Q = C x^(kappa - 1/2) w^((1 + lambda)/2) P_n^(2 kappa, lambda)(1 - 2x).

Integrals over chi are done in ``s = log(x / w)``; there every integrand is
smooth and decays like ``exp(2 kappa s)`` on the left and ``exp(-lambda s)``
on the right, so Gauss-Legendre panels of geometrically growing width cover
both ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import gamma, rgamma

from .errors import DivergentIntegral, DomainError, NoConvergence
from .params import DimensionlessParams
from .quantum_numbers import angular_eigenvalue
from .spectrum import Level, hypergeometric_parameters
from .specialfn import JacobiPoly, gauss_2f1

CHI_FLOOR = 1e-8
QUAD_RTOL = 1e-8
_GL_NODES = 24
_TAIL_LOG = 46.0  # integrand below exp(-46) ~ 1e-20 of its scale is dropped


def chi_to_x(chi):
    """x = 2 / (coth(chi) + 1) = 1 - exp(-2 chi)."""
    chi = np.asarray(chi, dtype=float)
    if np.any(chi <= 0):
        raise DomainError("chi must be positive")
    return -np.expm1(-2.0 * chi)


def _chi_to_logit(chi):
    chi = np.asarray(chi, dtype=float)
    if np.any(chi < CHI_FLOOR):
        raise DomainError(f"chi below {CHI_FLOOR} is refused (Q may diverge at the origin)")
    return 2.0 * chi + np.log(-np.expm1(-2.0 * chi))


def _logit_parts(s):
    s = np.asarray(s, dtype=float)
    log_x = -np.logaddexp(0.0, -s)
    log_w = -np.logaddexp(0.0, s)
    return np.exp(log_x), np.exp(log_w), log_x, log_w


@dataclass(frozen=True)
class RadialProfile:
    """Radial function of one level, normalized to unit charge by default."""

    level: Level
    mu: float
    z_alpha: float
    norm_const: float = 1.0
    jacobi: JacobiPoly = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "jacobi", JacobiPoly(self.level.n, 2.0 * self.level.kappa, self.level.lam))

    @property
    def kappa(self) -> float:
        return self.level.kappa

    @property
    def lam(self) -> float:
        return self.level.lam

    @property
    def eps(self) -> float:
        return self.level.eps

    @property
    def angular(self) -> float:
        return angular_eigenvalue(self.level.two_l, self.level.two_q)

    def scaled(self, factor: float) -> "RadialProfile":
        return replace(self, norm_const=self.norm_const * factor)

    def _poly(self, x, w):
        """v(x) and dv/dx of the non-exponential factor."""
        y = w - x
        return self.jacobi(y), -2.0 * self.jacobi.deriv(y)

    def _pieces(self, s):
        """log of C x^(kappa-1/2) w^((1+lambda)/2), v, T, x, w, log x, log w.

        T is defined by dQ/dchi = 2 C x^(kappa-3/2) w^((1+lambda)/2) T.
        """
        x, w, log_x, log_w = _logit_parts(s)
        a = self.kappa - 0.5
        b = 0.5 * (1.0 + self.lam)
        v, vx = self._poly(x, w)
        t = a * w * v - b * x * v + x * w * vx
        log_pre = math.log(self.norm_const) + a * log_x + b * log_w
        return log_pre, v, t, x, w, log_x, log_w

    def values_logit(self, s):
        """Q and dQ/dchi at logit points ``s``."""
        log_pre, v, t, x, w, log_x, _ = self._pieces(s)
        pre = np.exp(log_pre)
        return pre * v, 2.0 * np.exp(log_pre - log_x) * t

    def tail_rates(self) -> tuple[float, float]:
        """Exponential decay rates of the functional integrands at s -> -inf, +inf."""
        return 2.0 * self.kappa, self.lam


def radial_profile(level: Level, params: DimensionlessParams, normalize: bool = True) -> RadialProfile:
    prof = RadialProfile(level=level, mu=params.mu, z_alpha=params.z_alpha)
    if normalize:
        q = charge_functional(prof)
        prof = prof.scaled(1.0 / math.sqrt(q))
    return prof


def radial_eval(profile, chi):
    return profile.values_logit(_chi_to_logit(chi))[0]


def radial_derivative(profile, chi):
    return profile.values_logit(_chi_to_logit(chi))[1]


def exp_form(profile: RadialProfile, chi):
    """Q written with exp(-chi (1 + lambda)) and the coth-form Jacobi argument."""
    chi = np.asarray(chi, dtype=float)
    coth = 1.0 / np.tanh(chi)
    x = 2.0 / (coth + 1.0)
    return (
        profile.norm_const
        * x ** (profile.kappa - 0.5)
        * np.exp(-chi * (1.0 + profile.lam))
        * profile.jacobi((coth - 3.0) / (coth + 1.0))
    )


# --- off-shell solutions -------------------------------------------------------


def _hyp_near_one(a: float, b: float, c: float, w: float) -> tuple[float, float, float]:
    """2F1(a, b; c; 1 - w) as T1 + w^(c-a-b) T2; returns (T1, T2, c - a - b)."""
    e = c - a - b
    t1 = gamma(c) * gamma(e) * rgamma(c - a) * rgamma(c - b) * gauss_2f1(a, b, 1.0 - e, w)
    t2 = gamma(c) * gamma(-e) * rgamma(a) * rgamma(b) * gauss_2f1(c - a, c - b, 1.0 + e, w)
    return t1, t2, e


@dataclass(frozen=True)
class HypergeometricProfile(RadialProfile):
    """Regular-at-origin solution for arbitrary eps: v = 2F1(A+, B+; C+; x).

    Only for an eigenvalue does the series terminate; otherwise the solution
    picks up the non-normalizable (1-x)^((1-lambda)/2) branch.
    """

    def _poly(self, x, w):
        a, b, c = hypergeometric_parameters(self.eps, self.kappa, self.lam, self.z_alpha)
        v = np.empty_like(x)
        vx = np.empty_like(x)
        for i, (xi, wi) in enumerate(zip(np.ravel(x), np.ravel(w))):
            if xi <= 0.5:
                v.flat[i] = gauss_2f1(a, b, c, xi)
                vx.flat[i] = a * b / c * gauss_2f1(a + 1, b + 1, c + 1, xi)
            else:
                t1, t2, e = _hyp_near_one(a, b, c, wi)
                v.flat[i] = t1 + wi**e * t2
                t1, t2, e = _hyp_near_one(a + 1, b + 1, c + 1, wi)
                vx.flat[i] = a * b / c * (t1 + wi**e * t2)
        return v, vx


def off_shell_profile(level: Level, eps: float, params: DimensionlessParams) -> HypergeometricProfile:
    """Profile of ``level``'s (l, q) channel at a trial energy ``eps``."""
    lam = math.sqrt(params.mu**2 + 1.0 - eps * eps)
    trial = replace(level, eps=eps, lam=lam)
    return HypergeometricProfile(level=trial, mu=params.mu, z_alpha=params.z_alpha)


# --- quadrature ----------------------------------------------------------------


def _panels(rate_left: float, rate_right: float) -> np.ndarray:
    s_lo = -max(12.0, _TAIL_LOG / rate_left)
    s_hi = max(12.0, _TAIL_LOG / rate_right)
    core = np.arange(-8.0, 8.0 + 1e-9, 0.5)
    right = [8.0]
    width = 0.5
    while right[-1] < s_hi:
        width *= 1.25
        right.append(right[-1] + width)
    left = [-8.0]
    width = 0.5
    while left[-1] > s_lo:
        width *= 1.25
        left.append(left[-1] - width)
    return np.concatenate([left[::-1][:-1], core, right[1:]])


def _gl_integrate(f, edges: np.ndarray, nodes: int) -> tuple[float, np.ndarray]:
    t, wt = np.polynomial.legendre.leggauss(nodes)
    a, b = edges[:-1, None], edges[1:, None]
    s = 0.5 * (b - a) * t[None, :] + 0.5 * (a + b)
    vals = f(s.ravel()).reshape(s.shape)
    return float(np.sum(0.5 * (b - a) * wt[None, :] * vals)), vals


def _integrate(profile, integrand) -> float:
    """Integral over chi of ``integrand(F, v, T, x, w)`` times dchi/ds."""

    def f(s):
        log_pre, v, t, x, w, log_x, log_w = profile._pieces(s)
        # C^2 x^(2 kappa - 1) w^lambda, times dchi/ds = x / 2
        fac = 0.5 * np.exp(2.0 * log_pre + log_x - log_w)
        return integrand(fac, v, t, x, w)

    edges = _panels(*profile.tail_rates())
    with np.errstate(over="ignore", invalid="ignore"):
        coarse, vals = _gl_integrate(f, edges, _GL_NODES)
        fine, _ = _gl_integrate(f, edges, 2 * _GL_NODES)
        end = np.abs(f(np.array([edges[0], edges[-1]])))
    if not (np.isfinite(coarse) and np.isfinite(fine)) or not np.all(np.isfinite(vals)):
        raise DivergentIntegral("integrand overflowed")
    scale = np.max(np.abs(vals))
    if np.max(end) > 1e-12 * scale * (edges[-1] - edges[0]) or not np.all(np.isfinite(end)):
        raise DivergentIntegral("integrand does not decay at the ends of the domain")
    if abs(fine - coarse) > QUAD_RTOL * abs(fine):
        raise NoConvergence(f"quadrature not converged: {coarse} vs {fine}")
    return fine


def sobolev_norm(profile) -> float:
    """Integral of sinh^2 chi { |Q|^2 (1 + 1/sinh^2 chi) + |dQ/dchi|^2 }."""
    return _integrate(profile, lambda F, v, t, x, w: F * (0.25 * x * x * v * v + w * v * v + t * t))


def charge_functional(profile, eps: float | None = None) -> float:
    """Charge in units of e: integral of sinh^2 chi |Q|^2 2 [eps + Za (coth chi - 1)]."""
    e = profile.eps if eps is None else eps
    g = profile.z_alpha
    return _integrate(profile, lambda F, v, t, x, w: F * v * v * (0.5 * e * x * x + g * x * w))


def energy_functional(profile, eps: float | None = None) -> float:
    """Dimensionless energy functional of the stationary state."""
    e = profile.eps if eps is None else eps
    g = profile.z_alpha
    mu = profile.mu
    ang = profile.angular
    return _integrate(
        profile,
        lambda F, v, t, x, w: F
        * ((e * e + mu * mu) * 0.25 * x * x * v * v - g * g * w * w * v * v + t * t + ang * w * v * v),
    )


def charge_overlap(p1: RadialProfile, p2: RadialProfile) -> float:
    """Charge-form pairing of two levels in the same (l, q) channel.

    Integral of sinh^2 chi Q1 Q2 [eps1 + eps2 + 2 Za (coth chi - 1)], which
    vanishes for distinct eigenstates.
    """
    if (p1.level.two_l, p1.level.two_q) != (p2.level.two_l, p2.level.two_q):
        raise DomainError("overlap needs levels from the same (l, q) channel")
    g = p1.z_alpha
    e_sum = p1.eps + p2.eps
    rates = (min(p1.tail_rates()[0], p2.tail_rates()[0]), 0.5 * (p1.lam + p2.lam))

    def f(s):
        q1, _ = p1.values_logit(s)
        q2, _ = p2.values_logit(s)
        x, w, _, _ = _logit_parts(s)
        # sinh^2 chi dchi/ds = x^3 / (8 w); coth - 1 = 2 w / x
        return q1 * q2 * (x**3 / (8.0 * w)) * (e_sum + 4.0 * g * w / x)

    edges = _panels(*rates)
    coarse, _ = _gl_integrate(f, edges, _GL_NODES)
    fine, _ = _gl_integrate(f, edges, 2 * _GL_NODES)
    if abs(fine - coarse) > QUAD_RTOL * max(1.0, abs(fine)):
        raise NoConvergence("overlap quadrature not converged")
    return fine


def count_nodes(profile: RadialProfile, samples: int = 20_000) -> int:
    """Sign changes of Q over (0, inf), scanned on a logit grid."""
    edges = _panels(*profile.tail_rates())
    s = np.linspace(edges[0], edges[-1], samples)
    v = profile._pieces(s)[1]
    v = v[v != 0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


def sample(profile: RadialProfile, chi_min: float, chi_max: float, count: int):
    """(chi, x, Q, dQ/dchi) on a uniform chi grid."""
    if not CHI_FLOOR <= chi_min < chi_max:
        raise DomainError(f"need {CHI_FLOOR} <= chi_min < chi_max")
    if count < 2:
        raise DomainError("need at least two samples")
    chi = np.linspace(chi_min, chi_max, count)
    q, dq = profile.values_logit(_chi_to_logit(chi))
    return chi, chi_to_x(chi), q, dq
