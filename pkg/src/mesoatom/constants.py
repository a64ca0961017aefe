"""CGS constants (derived from CODATA SI values) and named scenario presets."""

from __future__ import annotations

from scipy import constants as _si

HBAR = _si.hbar * 1e7  # erg s
C = _si.c * 1e2  # cm / s
E_ESU = _si.e * _si.c * 10.0  # statC
MEV_ERG = _si.mega * _si.eV * 1e7

# PDG 2022 charged pion mass, 139.57039(18) MeV/c^2
PION_MASS_MEV = 139.57039
PION_MASS_G = PION_MASS_MEV * MEV_ERG / C**2

PRESETS = {
    "pion-cosmological": {
        "values": {"a_cm": 1e28, "m0_g": PION_MASS_G, "Z": 1, "two_q": 0},
        "provenance": (
            "a = 1e28 cm (present cosmological scale), Z = 1, m0 = m(pi+) = "
            f"{PION_MASS_MEV} MeV/c^2 (PDG 2022), CGS constants from CODATA 2018"
        ),
    },
}
