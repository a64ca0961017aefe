"""Shooting eigensolver for the radial equation, independent of the closed form.

The radial equation in ``x = 1 - exp(-2 chi)`` is integrated directly.  With
``s = log(x / (1 - x))`` it reads ``Q'' + Q' + (W/4) Q = 0`` and with
``y = exp(s/2) Q`` becomes ``y'' = k^2(s) y``, where

    W(x) = (eps x + 2 Za (1 - x))^2 - mu^2 x^2 - 4 [l(l+1) - q^2] (1 - x),
    k^2  = 1/4 - W/4.

``y`` is propagated in modified Pruefer form ``y = r sin(theta)``,
``y' = k0 r cos(theta)``: theta stays bounded where ``y`` grows like
``exp(lambda s / 2)``, and every zero of ``y`` is a crossing of a multiple
of pi.  Near ``x = 1`` the solution is split into the modes
``(1-x)^((1 -/+ lambda)/2)`` by a least-squares fit over the last decade of
``1 - x``; the coefficient of the growing mode is the mismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .errors import BranchError, DomainError, StiffnessFailure

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71 / 57600,
    -71 / 16695,
    71 / 1920,
    -17253 / 339200,
    22 / 525,
    -1 / 40,
)


@njit(cache=True)
def _k2(s, eps, mu, za, ang):
    if s > 0:
        e = math.exp(-s)
        x = 1.0 / (1.0 + e)
        w = e * x
    else:
        e = math.exp(s)
        w = 1.0 / (1.0 + e)
        x = e * w
    t = eps * x + 2.0 * za * w
    return 0.25 - 0.25 * (t * t - mu * mu * x * x - 4.0 * ang * w)


@njit(cache=True)
def _rhs(s, th, eps, mu, za, ang, k0):
    k2 = _k2(s, eps, mu, za, ang)
    c = math.cos(th)
    sn = math.sin(th)
    return k0 * c * c - k2 / k0 * sn * sn, sn * c * (k0 + k2 / k0)


@njit(cache=True)
def _pruefer(stations, th0, eps, mu, za, ang, k0, rtol, atol, max_steps):
    """Integrate (theta, log r) through ``stations``; returns arrays and a status code."""
    ns = stations.shape[0]
    th_out = np.empty(ns)
    lr_out = np.empty(ns)
    s = stations[0]
    th = th0
    lr = 0.0
    th_out[0] = th
    lr_out[0] = lr
    h = 1e-2
    steps = 0
    k1t, k1r = _rhs(s, th, eps, mu, za, ang, k0)
    for j in range(1, ns):
        target = stations[j]
        while s < target:
            if steps >= max_steps:
                return th_out, lr_out, 1
            hh = min(h, target - s)
            k2t, k2r = _rhs(s + _C2 * hh, th + hh * _A21 * k1t, eps, mu, za, ang, k0)
            k3t, k3r = _rhs(s + _C3 * hh, th + hh * (_A31 * k1t + _A32 * k2t), eps, mu, za, ang, k0)
            k4t, k4r = _rhs(
                s + _C4 * hh, th + hh * (_A41 * k1t + _A42 * k2t + _A43 * k3t), eps, mu, za, ang, k0
            )
            k5t, k5r = _rhs(
                s + _C5 * hh,
                th + hh * (_A51 * k1t + _A52 * k2t + _A53 * k3t + _A54 * k4t),
                eps, mu, za, ang, k0,
            )
            k6t, k6r = _rhs(
                s + hh,
                th + hh * (_A61 * k1t + _A62 * k2t + _A63 * k3t + _A64 * k4t + _A65 * k5t),
                eps, mu, za, ang, k0,
            )
            th_new = th + hh * (_B1 * k1t + _B3 * k3t + _B4 * k4t + _B5 * k5t + _B6 * k6t)
            lr_new = lr + hh * (_B1 * k1r + _B3 * k3r + _B4 * k4r + _B5 * k5r + _B6 * k6r)
            k7t, k7r = _rhs(s + hh, th_new, eps, mu, za, ang, k0)
            err = abs(hh * (_E1 * k1t + _E3 * k3t + _E4 * k4t + _E5 * k5t + _E6 * k6t + _E7 * k7t))
            sc = atol + rtol * max(abs(th), abs(th_new))
            ratio = err / sc
            if ratio <= 1.0:
                s = s + hh if hh < target - s else target
                th = th_new
                lr = lr_new
                k1t, k1r = k7t, k7r
                steps += 1
            if ratio == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * ratio ** -0.2))
            if hh < h and ratio <= 1.0:
                # step was clipped at a station; keep the free step size
                h = max(h, hh * fac)
            else:
                h = hh * fac
            if h < 1e-13 * (1.0 + abs(s)):
                return th_out, lr_out, 2
        th_out[j] = th
        lr_out[j] = lr
    return th_out, lr_out, 0


@dataclass(frozen=True)
class ShootingConfig:
    x_min: float = 1e-8
    x_max: float = 1.0 - 1e-10
    steps: int = 20_000
    eps_bracket: tuple[float, float] | None = None
    bracket_pad: float = 1e-10
    tol: float = 1e-10
    rtol: float = 1e-12
    fit_points: int = 16

    def __post_init__(self):
        if not 0.0 < self.x_min < self.x_max < 1.0:
            raise DomainError("need 0 < x_min < x_max < 1")
        if not self.tol > 0:
            raise DomainError("tol must be positive")

    def bracket(self, z_alpha: float, mu: float) -> tuple[float, float]:
        if self.eps_bracket is not None:
            return self.eps_bracket
        return z_alpha + self.bracket_pad, math.sqrt(mu * mu + 1.0) - self.bracket_pad


@dataclass(frozen=True)
class ShotResult:
    mismatch: float
    node_count: int
    theta_end: float


def _indicial(l: float, two_q: int, z_alpha: float) -> float:
    """Larger root rho of rho^2 + rho + Za^2 - l(l+1) + q^2 = 0, plus 1/2."""
    ang = l * (l + 1.0) - (two_q / 2) ** 2
    disc = 0.25 + ang - z_alpha * z_alpha
    if disc <= 0:
        raise BranchError(f"indicial exponents complex at x = 0 (l={l}, q={two_q / 2})")
    return math.sqrt(disc)


def _logit(x: float) -> float:
    return math.log(x) - math.log1p(-x)


def shoot_full(eps: float, l: float, two_q: int, z_alpha: float, mu: float, cfg: ShootingConfig = ShootingConfig()) -> ShotResult:
    lam2 = mu * mu + 1.0 - eps * eps
    if not lam2 > 0:
        raise BranchError(f"lambda^2 = {lam2} <= 0 at eps = {eps}; outside the bound-state window")
    lam = math.sqrt(lam2)
    ang = l * (l + 1.0) - (two_q / 2) ** 2
    kap = _indicial(l, two_q, z_alpha)
    rho = kap - 0.5

    # Frobenius start Q = x^rho (1 + c1 x) at x_min
    x0 = cfg.x_min
    w1 = z_alpha * (eps - 2.0 * z_alpha) + ang
    c1 = (2.0 * rho * rho + 2.0 * rho - w1) / (2.0 * rho + 2.0)
    q0 = 1.0 + c1 * x0
    p0 = (1.0 - x0) * (rho + c1 * (rho + 1.0) * x0)  # dQ/ds, divided by x^rho
    k0 = max(1.0, 0.5 * lam)
    th0 = math.atan2(k0 * q0, p0 + 0.5 * q0)

    s0 = _logit(x0)
    s_end = _logit(cfg.x_max)
    s_win = s_end - math.log(10.0)
    if not s0 < 0.0 < s_win:
        raise DomainError("truncation points must straddle x = 1/2 with a full decade before x_max")
    window = np.linspace(s_win, s_end, cfg.fit_points)
    stations = np.concatenate(([s0, 0.0], window))
    th, lr, status = _pruefer(stations, th0, eps, mu, z_alpha, ang, k0, cfg.rtol, 1e-13, cfg.steps)
    if status:
        reason = "step budget exhausted" if status == 1 else "step size underflow"
        raise StiffnessFailure(f"{reason} at eps = {eps}")

    # least-squares split of (y, y') over the last decade into the two modes
    sw = window
    x = 1.0 / (1.0 + np.exp(-sw))
    logw = -np.logaddexp(0.0, sw)
    logx = -np.logaddexp(0.0, -sw)
    w = np.exp(logw)
    log_g = 0.5 * logx - 0.5 * lam * logw
    log_d = 0.5 * logx + 0.5 * lam * logw
    dg = 0.5 * w + 0.5 * lam * x
    dd = 0.5 * w - 0.5 * lam * x
    ref = log_g[0]
    g = np.exp(log_g - ref)
    d = np.exp(log_d - log_d[0])
    scale = np.exp(lr[2:] - lr[2])
    y = scale * np.sin(th[2:])
    yp = scale * k0 * np.cos(th[2:])
    mat = np.concatenate([np.column_stack([g, d]), np.column_stack([g * dg, d * dd])])
    rhs = np.concatenate([y, yp])
    coef, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    # growing-mode coefficient relative to the Pruefer radius at x = 1/2
    log_fac = lr[2] - lr[1] - ref
    mismatch = coef[0] * math.exp(min(700.0, max(-700.0, log_fac)))

    theta_end = th[-1]
    nodes = math.floor(theta_end / math.pi)
    # continue the count to x -> 1: a residual growing mode adds one more
    # zero when theta sits between the decaying direction and the next pi
    th_dec = math.pi - math.atan2(2.0 * k0, lam)
    if theta_end - nodes * math.pi > th_dec:
        nodes += 1
    return ShotResult(mismatch=mismatch, node_count=nodes, theta_end=theta_end)


def shoot(eps: float, l: float, two_q: int, z_alpha: float, mu: float, cfg: ShootingConfig = ShootingConfig()) -> tuple[float, int]:
    """(mismatch, node_count) of the solution regular at x = 0."""
    r = shoot_full(eps, l, two_q, z_alpha, mu, cfg)
    return r.mismatch, r.node_count


def find_eigenvalues(
    l: float,
    two_q: int,
    z_alpha: float,
    mu: float,
    cfg: ShootingConfig = ShootingConfig(),
    bracket: tuple[float, float] | None = None,
) -> list[float]:
    """All eigenvalues eps in the bracket, sorted ascending.

    The node count to x -> 1 equals the number of eigenvalues below eps,
    so roots are isolated by bisecting on the count and then refined on the
    sign change of the mismatch.
    """
    lo, hi = bracket if bracket is not None else cfg.bracket(z_alpha, mu)
    if not lo < hi:
        return []
    memo: dict[float, tuple[float, int]] = {}

    def f(e: float) -> tuple[float, int]:
        if e not in memo:
            memo[e] = shoot(e, l, two_q, z_alpha, mu, cfg)
        return memo[e]

    roots: list[float] = []

    def isolate(a: float, b: float, depth: int):
        (fa, na), (fb, nb) = f(a), f(b)
        count = nb - na
        if count <= 0:
            return
        if count == 1 and fa * fb < 0:
            roots.append(brentq(lambda e: f(e)[0], a, b, xtol=cfg.tol * max(1.0, abs(a)), rtol=1e-15))
            return
        if depth > 60 or b - a <= cfg.tol * max(1.0, abs(a)):
            # count says a root is here but the mismatch has no sign change;
            # report the midpoint rather than dropping the level
            roots.append(0.5 * (a + b))
            return
        m = 0.5 * (a + b)
        isolate(a, m, depth + 1)
        isolate(m, b, depth + 1)

    isolate(lo, hi, 0)
    return sorted(roots)


@dataclass(frozen=True)
class ChannelReport:
    two_l: int
    closed_form: tuple[float, ...]
    roots: tuple[float, ...]

    @property
    def complete(self) -> bool:
        return len(self.closed_form) == len(self.roots)

    def rel_errors(self) -> list[float]:
        """Relative error of each closed-form level against its nearest root."""
        if not self.roots:
            return [math.inf] * len(self.closed_form)
        r = np.asarray(self.roots)
        return [float(np.min(np.abs(r - e)) / abs(e)) for e in self.closed_form]


@dataclass(frozen=True)
class VerifyReport:
    channels: tuple[ChannelReport, ...]
    runtime_s: float

    @property
    def levels_checked(self) -> int:
        return sum(len(c.closed_form) for c in self.channels)

    @property
    def max_rel_err(self) -> float:
        errs = [e for c in self.channels for e in c.rel_errors()]
        return max(errs) if errs else 0.0

    @property
    def completeness_ok(self) -> bool:
        return all(c.complete for c in self.channels)


def scan_channels(two_q: int, bounds, extra: int = 1) -> list[int]:
    """2l values to sweep: every populated l plus ``extra`` empty ones above."""
    start = abs(two_q)
    top = bounds.l0_of_q(two_q)
    last = (start if top is None else top) + 2 * extra
    return list(range(start, last + 1, 2))


def verify_spectrum(params, cfg: ShootingConfig = ShootingConfig(), extra: int = 1) -> VerifyReport:
    """Compare every closed-form level with the shooting roots, channel by channel."""
    import time

    from .spectrum import build_spectrum

    t0 = time.perf_counter()
    spec = build_spectrum(params)
    by_l: dict[int, list[float]] = {}
    for lv in spec.levels:
        by_l.setdefault(lv.two_l, []).append(lv.eps)
    channels = []
    for two_l in scan_channels(params.two_q, spec.bounds, extra):
        roots = find_eigenvalues(two_l / 2, params.two_q, params.z_alpha, params.mu, cfg)
        channels.append(ChannelReport(two_l, tuple(sorted(by_l.get(two_l, []))), tuple(roots)))
    return VerifyReport(tuple(channels), time.perf_counter() - t0)
