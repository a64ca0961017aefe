"""Closed-form discrete energy levels in dimensionless and CGS units."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import MesoatomError, NoSuchLevel, OutOfSpectrum
from .params import DimensionlessParams, PhysicalParams, epsilon_to_energy
from .quantum_numbers import (
    DEFAULT_MAX_COUNT,
    QuantumNumbers,
    SpectrumBounds,
    enumerate_levels,
    kappa as kappa_of,
    principal_number,
    spectrum_caps,
)

QUANTIZATION_ATOL = 1e-9


@dataclass(frozen=True)
class Level:
    qn: QuantumNumbers
    kappa: float
    principal: float
    eps: float
    lam: float
    energy_erg: float | None = None

    @property
    def degeneracy(self) -> int:
        return self.qn.degeneracy

    @property
    def n(self) -> int:
        return self.qn.n

    @property
    def two_l(self) -> int:
        return self.qn.two_l

    @property
    def two_q(self) -> int:
        return self.qn.two_q


def _check_inside(big_n: float, mu: float, z_alpha: float) -> float:
    n0 = spectrum_caps(mu, z_alpha).n0_cap
    if not 0 < big_n < n0:
        raise OutOfSpectrum(f"N = {big_n} outside (0, N0 = {n0})")
    return n0


def epsilon_of(big_n: float, mu: float, z_alpha: float) -> float:
    """Dimensionless energy Za + N sqrt(mu^2 + 1 - N^2 - Za^2) / sqrt(N^2 + Za^2)."""
    _check_inside(big_n, mu, z_alpha)
    radicand = mu * mu + 1.0 - big_n * big_n - z_alpha * z_alpha
    assert radicand > 0, radicand
    return z_alpha + big_n * math.sqrt(radicand) / math.hypot(big_n, z_alpha)


def decay_exponent(big_n: float, mu: float, z_alpha: float) -> float:
    """lambda = sqrt(mu^2 + 1 - eps^2) for the level with principal number N.

    Evaluated through the factor (N0 - N) so that nothing cancels, neither
    at cosmological mu nor for levels just under the cap.
    """
    n0 = _check_inside(big_n, mu, z_alpha)
    g = z_alpha
    s = math.sqrt(mu * mu + 1.0)
    r2 = big_n * big_n + g * g
    radicand = mu * mu + 1.0 - r2
    num = (n0 - big_n) * (n0 + big_n) * (g * s + r2)
    den = r2 * (g * math.sqrt(radicand / r2) + big_n)
    return num / den


def hypergeometric_parameters(eps: float, kappa: float, lam: float, z_alpha: float) -> tuple[float, float, float]:
    """(A+, B+, C+) of the regular hypergeometric solution."""
    d = 4.0 * z_alpha * (eps - z_alpha)
    root = math.sqrt(lam * lam + d)
    # (lam + 1 - root) / 2 without cancelling lam against root
    a_shift = 0.5 - 0.5 * d / (root + lam)
    a_plus = kappa + a_shift
    b_plus = kappa + 0.5 * (lam + 1.0 + root)
    c_plus = 2.0 * kappa + 1.0
    return a_plus, b_plus, c_plus


def quantization_residual(level: Level, z_alpha: float) -> float:
    """A+ + n, which vanishes for a genuine discrete level."""
    a_plus, _, _ = hypergeometric_parameters(level.eps, level.kappa, level.lam, z_alpha)
    return a_plus + level.n


def energy_of(big_n: float, p: PhysicalParams) -> float:
    """Level energy in erg, evaluated directly in CGS quantities."""
    g = p.Z * p.alpha
    mu = p.m0 * p.a * p.c / p.hbar
    _check_inside(big_n, mu, g)
    rest = (p.m0 * p.c**2) ** 2
    curv = (1.0 - big_n**2 - g**2) * (p.hbar * p.c / p.a) ** 2
    return p.Z * p.e**2 / p.a + big_n * math.sqrt(rest + curv) / math.hypot(big_n, g)


def make_level(qn: QuantumNumbers, params: DimensionlessParams, p: PhysicalParams | None = None) -> Level:
    k = kappa_of(qn.l, qn.two_q, params.z_alpha)
    big_n = principal_number(qn.n, k)
    eps = epsilon_of(big_n, params.mu, params.z_alpha)
    lam = decay_exponent(big_n, params.mu, params.z_alpha)
    energy = None if p is None else epsilon_to_energy(eps, p)
    level = Level(qn=qn, kappa=k, principal=big_n, eps=eps, lam=lam, energy_erg=energy)
    if not (params.z_alpha < eps and lam > 0):
        raise MesoatomError(f"level {qn} violates Za < eps, lambda > 0")
    resid = quantization_residual(level, params.z_alpha)
    if abs(resid) > QUANTIZATION_ATOL * max(1.0, big_n):
        raise MesoatomError(f"A+ = -n back-substitution off by {resid} for {qn}")
    return level


class Spectrum(NamedTuple):
    levels: list[Level]
    truncated: bool
    bounds: SpectrumBounds


def build_spectrum(
    params: DimensionlessParams,
    p: PhysicalParams | None = None,
    max_count: int = DEFAULT_MAX_COUNT,
) -> Spectrum:
    enum = enumerate_levels(params, max_count)
    levels = [make_level(qn, params, p) for qn in enum.levels]
    # already ordered by N, and eps is increasing in N
    levels.sort(key=lambda lv: lv.eps)
    return Spectrum(levels, enum.truncated, enum.bounds)


def find_level(params: DimensionlessParams, n: int, two_l: int, p: PhysicalParams | None = None) -> Level:
    b = spectrum_caps(params.mu, params.z_alpha)
    try:
        qn = QuantumNumbers(n=n, two_l=two_l, two_q=params.two_q)
    except MesoatomError as exc:
        raise NoSuchLevel(str(exc)) from None
    n0 = b.n0_of_lq(two_l, params.two_q)
    if n0 is None or n > n0:
        raise NoSuchLevel(f"(n={n}, l={two_l}/2) is not in the discrete spectrum")
    return make_level(qn, params, p)
