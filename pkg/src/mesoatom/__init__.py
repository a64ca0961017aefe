"""Discrete spectrum of a scalar meson bound to a dyon on hyperbolic 3-space."""

from .errors import (
    ConfigError,
    DivergentIntegral,
    DomainError,
    MesoatomError,
    NoConvergence,
    NoSuchLevel,
    OracleError,
    OutOfChart,
    OutOfSpectrum,
)
from .params import DimensionlessParams, PhysicalParams, from_physical, params_from_config
from .quantum_numbers import QuantumNumbers, SpectrumBounds, enumerate_levels, kappa, spectrum_caps
from .spectrum import Level, Spectrum, build_spectrum, epsilon_of, find_level
from .wavefunction import RadialProfile, radial_profile

__all__ = [
    "ConfigError",
    "DimensionlessParams",
    "DivergentIntegral",
    "DomainError",
    "Level",
    "MesoatomError",
    "NoConvergence",
    "NoSuchLevel",
    "OracleError",
    "OutOfChart",
    "OutOfSpectrum",
    "PhysicalParams",
    "QuantumNumbers",
    "RadialProfile",
    "Spectrum",
    "SpectrumBounds",
    "build_spectrum",
    "enumerate_levels",
    "epsilon_of",
    "find_level",
    "from_physical",
    "kappa",
    "params_from_config",
    "radial_profile",
    "spectrum_caps",
]
