"""Admissible quantum numbers and the caps N0, |q|0 that make the spectrum finite."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError
from .params import DimensionlessParams

DEFAULT_MAX_COUNT = 10**6


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Level label. Half-integers are stored doubled (``two_l = 2l``)."""

    n: int
    two_l: int
    two_q: int
    two_m: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"radial number must be >= 0, got {self.n}")
        if self.two_l < abs(self.two_q) or (self.two_l - abs(self.two_q)) % 2:
            raise DomainError(f"l = {self.two_l}/2 not in |q|, |q|+1, ... for q = {self.two_q}/2")
        if self.two_m is not None:
            if abs(self.two_m) > self.two_l or (self.two_l - self.two_m) % 2:
                raise DomainError(f"m = {self.two_m}/2 not in -l..l for l = {self.two_l}/2")

    @property
    def l(self) -> float:
        return self.two_l / 2

    @property
    def m(self) -> float | None:
        return None if self.two_m is None else self.two_m / 2

    @property
    def degeneracy(self) -> int:
        return self.two_l + 1


def _two_l_of(l: float) -> int:
    two_l = round(2 * l)
    if abs(2 * l - two_l) > 1e-12:
        raise DomainError(f"l = {l} is not a half-integer")
    return int(two_l)


def angular_eigenvalue(two_l: int, two_q: int) -> float:
    """l(l+1) - q^2, the eigenvalue of minus the monopole Laplacian."""
    return (two_l * (two_l + 2) - two_q * two_q) / 4


def kappa(l: float, two_q: int, z_alpha: float) -> float:
    """Effective angular index sqrt((l+1/2)^2 - (Z alpha)^2 - q^2)."""
    two_l = _two_l_of(l)
    if two_l < abs(two_q):
        raise DomainError(f"l = {l} < |q| = {abs(two_q) / 2}")
    # (l + 1/2)^2 - q^2 evaluated exactly in integers
    radicand = ((two_l + 1) ** 2 - two_q * two_q) / 4 - z_alpha * z_alpha
    if radicand <= 0:
        raise DomainError(f"kappa radicand {radicand} <= 0 (l={l}, q={two_q / 2}, Za={z_alpha})")
    return math.sqrt(radicand)


def principal_number(n: int, kappa: float) -> float:
    return n + kappa + 0.5


@dataclass(frozen=True)
class SpectrumBounds:
    n0_cap: float
    q0_cap: float
    z_alpha: float

    @property
    def empty(self) -> bool:
        """True when no magnetic charge admits a level (N0 <= 1/2)."""
        return self.n0_cap <= 0.5

    def empty_for(self, two_q: int) -> bool:
        return self.empty or abs(two_q) / 2 >= self.q0_cap

    def l0_of_q(self, two_q: int) -> int | None:
        """Largest admissible 2l for this q, or None if no l qualifies."""
        if self.empty_for(two_q):
            return None
        q2 = two_q * two_q / 4
        # l(l+1) - q^2 < q0  <=>  l < -1/2 + sqrt(1/4 + q0 + q^2)
        bound = -0.5 + math.sqrt(0.25 + self.q0_cap + q2)
        steps = max(0, math.floor(bound - abs(two_q) / 2))
        two_l = abs(two_q) + 2 * steps
        while two_l >= abs(two_q) and not angular_eigenvalue(two_l, two_q) < self.q0_cap:
            two_l -= 2
        while angular_eigenvalue(two_l + 2, two_q) < self.q0_cap:
            two_l += 2
        return two_l if two_l >= abs(two_q) else None

    def n0_of_lq(self, two_l: int, two_q: int) -> int | None:
        """Largest admissible radial number for (l, q), or None."""
        if self.empty or angular_eigenvalue(two_l, two_q) >= self.q0_cap:
            return None
        k = kappa(two_l / 2, two_q, self.z_alpha)
        if not k + 0.5 < self.n0_cap:
            return None
        n = max(0, math.ceil(self.n0_cap - k - 0.5) - 1)
        while not principal_number(n, k) < self.n0_cap:
            n -= 1
        while principal_number(n + 1, k) < self.n0_cap:
            n += 1
        return n


def spectrum_caps(mu: float, z_alpha: float) -> SpectrumBounds:
    n0 = math.sqrt(z_alpha * max(0.0, math.sqrt(mu * mu + 1.0) - z_alpha))
    if n0 <= 0.5:
        return SpectrumBounds(n0_cap=n0, q0_cap=0.0, z_alpha=z_alpha)
    return SpectrumBounds(n0_cap=n0, q0_cap=n0 * n0 - n0 + z_alpha * z_alpha, z_alpha=z_alpha)


class Enumeration(NamedTuple):
    levels: list[QuantumNumbers]
    truncated: bool
    bounds: SpectrumBounds


def _admissible(n: int, two_l: int, two_q: int, k: float, b: SpectrumBounds) -> bool:
    return principal_number(n, k) < b.n0_cap and angular_eigenvalue(two_l, two_q) < b.q0_cap


def enumerate_levels(params: DimensionlessParams, max_count: int = DEFAULT_MAX_COUNT) -> Enumeration:
    """All (n, l) with N < N0 and l(l+1) - q^2 < |q|0, ordered by (N, l).

    Levels are produced by a k-way merge over l, so the cost is proportional
    to ``max_count`` even when the full spectrum is astronomically large.
    """
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    b = spectrum_caps(params.mu, params.z_alpha)
    two_q = params.two_q
    if b.empty_for(two_q):
        return Enumeration([], False, b)

    def kap(two_l: int) -> float:
        return kappa(two_l / 2, two_q, params.z_alpha)

    heap: list[tuple[float, int, int, float]] = []
    l_start = abs(two_q)
    k0 = kap(l_start)
    if _admissible(0, l_start, two_q, k0, b):
        heap.append((principal_number(0, k0), l_start, 0, k0))

    out: list[QuantumNumbers] = []
    while heap and len(out) < max_count:
        big_n, two_l, n, k = heapq.heappop(heap)
        out.append(QuantumNumbers(n=n, two_l=two_l, two_q=two_q))
        if _admissible(n + 1, two_l, two_q, k, b):
            heapq.heappush(heap, (principal_number(n + 1, k), two_l, n + 1, k))
        if n == 0:
            k_next = kap(two_l + 2)
            if _admissible(0, two_l + 2, two_q, k_next, b):
                heapq.heappush(heap, (principal_number(0, k_next), two_l + 2, 0, k_next))
    return Enumeration(out, bool(heap), b)


def is_spectrum_empty(params: DimensionlessParams) -> bool:
    return spectrum_caps(params.mu, params.z_alpha).empty_for(params.two_q)
