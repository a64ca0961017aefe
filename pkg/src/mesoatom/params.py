"""Physical inputs, CGS <-> dimensionless conversion and the couplings mu, Z*alpha, q.

Everything downstream works with :class:`DimensionlessParams`; CGS units only
appear here and in the optional physical-energy output of the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

from .constants import C, E_ESU, HBAR
from .errors import ConfigError, CouplingTooLarge, NotHalfInteger

HALF_INTEGER_RTOL = 1e-9


def _half_integer_twice(value: float) -> int:
    """Return ``round(2 * value)``, raising if ``value`` is not a half-integer."""
    twice = round(2.0 * value)
    if abs(2.0 * value - twice) > 2.0 * HALF_INTEGER_RTOL * max(1.0, abs(value)):
        raise NotHalfInteger(f"e*gm/(hbar*c) = {value!r} is not a half-integer")
    return int(twice)


@dataclass(frozen=True)
class PhysicalParams:
    """Model inputs in CGS: curvature radius ``a`` [cm], meson mass ``m0`` [g],
    nuclear charge number ``Z``, elementary charge ``e`` [statC] and magnetic
    charge ``gm``."""

    a: float
    m0: float
    Z: int
    e: float = E_ESU
    gm: float = 0.0
    hbar: float = HBAR
    c: float = C

    def __post_init__(self):
        if not self.a > 0:
            raise ConfigError(f"curvature radius must be positive, got {self.a}")
        if not self.m0 > 0:
            raise ConfigError(f"particle mass must be positive, got {self.m0}")
        if int(self.Z) != self.Z or self.Z < 1:
            raise ConfigError(f"Z must be a positive integer, got {self.Z}")
        if not (self.e > 0 and self.hbar > 0 and self.c > 0):
            raise ConfigError("e, hbar and c must be positive")
        if self.Z * self.alpha >= 0.5:
            raise CouplingTooLarge(f"Z*alpha = {self.Z * self.alpha} must be < 1/2")
        _half_integer_twice(self.charge_product)

    @classmethod
    def with_two_q(cls, a: float, m0: float, Z: int, two_q: int, **kw) -> "PhysicalParams":
        """Build params with the magnetic charge fixed by ``2q`` instead of ``gm``."""
        e = kw.get("e", E_ESU)
        hbar = kw.get("hbar", HBAR)
        c = kw.get("c", C)
        gm = two_q * hbar * c / (2.0 * e)
        return cls(a=a, m0=m0, Z=Z, e=e, gm=gm, hbar=hbar, c=c)

    @property
    def charge_product(self) -> float:
        return self.e * self.gm / (self.hbar * self.c)

    @property
    def alpha(self) -> float:
        return self.e**2 / (self.hbar * self.c)

    @property
    def energy_unit(self) -> float:
        """hbar*c/a in erg: the scale converting epsilon to E."""
        return self.hbar * self.c / self.a


@dataclass(frozen=True)
class DimensionlessParams:
    mu: float
    z_alpha: float
    two_q: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu > 0):
            raise ConfigError(f"mu must be positive and finite, got {self.mu}")
        if not (math.isfinite(self.z_alpha) and self.z_alpha >= 0):
            raise ConfigError(f"z_alpha must be non-negative, got {self.z_alpha}")
        if self.z_alpha >= 0.5:
            raise CouplingTooLarge(f"Z*alpha = {self.z_alpha} must be < 1/2")
        if int(self.two_q) != self.two_q:
            raise ConfigError(f"two_q must be an integer, got {self.two_q}")
        object.__setattr__(self, "two_q", int(self.two_q))

    @property
    def q(self) -> float:
        return self.two_q / 2

    @property
    def abs_q(self) -> float:
        return abs(self.two_q) / 2


def from_physical(p: PhysicalParams) -> DimensionlessParams:
    mu = p.m0 * p.a * p.c / p.hbar
    z_alpha = p.Z * p.alpha
    two_q = _half_integer_twice(p.charge_product)
    return DimensionlessParams(mu=mu, z_alpha=z_alpha, two_q=two_q)


def epsilon_to_energy(eps: float, p: PhysicalParams) -> float:
    return eps * p.energy_unit


def energy_to_epsilon(energy: float, p: PhysicalParams) -> float:
    return energy / p.energy_unit


_DIMENSIONLESS_KEYS = ("mu", "z_alpha")
_PHYSICAL_KEYS = ("a_cm", "m0_g", "Z")


def params_from_config(cfg: Mapping[str, Any]) -> tuple[DimensionlessParams, PhysicalParams | None]:
    """Resolve a JSON-style config into (dimensionless, physical-or-None).

    Exactly one mode may be given: ``mu`` and ``z_alpha`` (with ``two_q``), or
    ``a_cm``, ``m0_g``, ``Z`` (with ``two_q`` or ``gm``).
    """
    has_dimless = any(cfg.get(k) is not None for k in _DIMENSIONLESS_KEYS)
    has_phys = any(cfg.get(k) is not None for k in _PHYSICAL_KEYS + ("gm", "e", "hbar", "c"))
    if has_dimless and has_phys:
        raise ConfigError("give either mu/z_alpha or physical a_cm/m0_g/Z, not both")
    if has_dimless:
        missing = [k for k in _DIMENSIONLESS_KEYS if cfg.get(k) is None]
        if missing:
            raise ConfigError(f"dimensionless mode needs {', '.join(missing)}")
        two_q = cfg.get("two_q")
        return (
            DimensionlessParams(float(cfg["mu"]), float(cfg["z_alpha"]), 0 if two_q is None else two_q),
            None,
        )
    missing = [k for k in _PHYSICAL_KEYS if cfg.get(k) is None]
    if missing:
        raise ConfigError(
            "need either mu and z_alpha, or a_cm, m0_g and Z (missing: " + ", ".join(missing) + ")"
        )
    extra = {k: float(cfg[k]) for k in ("e", "hbar", "c") if cfg.get(k) is not None}
    z = cfg["Z"]
    if int(z) != z:
        raise ConfigError(f"Z must be a positive integer, got {z}")
    if cfg.get("two_q") is not None and cfg.get("gm") is not None:
        p = PhysicalParams(float(cfg["a_cm"]), float(cfg["m0_g"]), int(z), gm=float(cfg["gm"]), **extra)
        if from_physical(p).two_q != cfg["two_q"]:
            raise ConfigError("two_q and gm disagree")
    elif cfg.get("gm") is not None:
        p = PhysicalParams(float(cfg["a_cm"]), float(cfg["m0_g"]), int(z), gm=float(cfg["gm"]), **extra)
    else:
        p = PhysicalParams.with_two_q(
            float(cfg["a_cm"]), float(cfg["m0_g"]), int(z), int(cfg.get("two_q") or 0), **extra
        )
    return from_physical(p), p
