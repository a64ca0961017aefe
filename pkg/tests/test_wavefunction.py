import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from mesoatom.errors import DivergentIntegral, DomainError
from mesoatom.params import DimensionlessParams
from mesoatom.spectrum import build_spectrum
from mesoatom.wavefunction import (
    CHI_FLOOR,
    charge_functional,
    charge_overlap,
    chi_to_x,
    count_nodes,
    energy_functional,
    exp_form,
    off_shell_profile,
    radial_derivative,
    radial_eval,
    radial_profile,
    sample,
    sobolev_norm,
)

CASES = [(10.0, 0.3, 0), (30.0, 0.45, 0), (50.0, 0.49, 4), (2.0, 0.49, 0), (40.0, 0.1, -1), (25.0, 0.35, 3)]


def all_profiles(cases=CASES):
    for mu, za, two_q in cases:
        p = DimensionlessParams(mu, za, two_q)
        for lv in build_spectrum(p).levels:
            yield p, lv, radial_profile(lv, p)


PROFILES = list(all_profiles())
IDS = [f"mu{p.mu:g}-za{p.z_alpha:g}-q{p.two_q}-n{lv.n}-l{lv.two_l}" for p, lv, _ in PROFILES]


def ode_residual(prof, chi, h=1e-3):
    """Relative residual of the radial equation by 8th-order differences."""
    c1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
    c2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
    q = np.array([radial_eval(prof, chi + k * h) for k in range(-4, 5)])
    d1 = np.tensordot(c1, q, 1) / h
    d2 = np.tensordot(c2, q, 1) / h**2
    q0 = q[4]
    coth = 1 / np.tanh(chi)
    pot = (prof.eps + prof.z_alpha * (coth - 1)) ** 2 - prof.angular / np.sinh(chi) ** 2 - prof.mu**2
    terms = [d2, 2 * coth * d1, pot * q0]
    return np.abs(sum(terms)) / sum(np.abs(t) for t in terms)


def test_profiles_cover_excited_states():
    assert len(PROFILES) >= 10
    assert max(lv.n for _, lv, _ in PROFILES) >= 2


@pytest.mark.parametrize("p,lv,prof", PROFILES, ids=IDS)
def test_ode_residual(p, lv, prof):
    chi = np.linspace(0.05, 15, 300)
    assert np.max(ode_residual(prof, chi)) < 1e-6


@pytest.mark.parametrize("p,lv,prof", PROFILES, ids=IDS)
def test_node_count(p, lv, prof):
    assert count_nodes(prof) == lv.n


@pytest.mark.parametrize("p,lv,prof", PROFILES, ids=IDS)
def test_charge_and_energy(p, lv, prof):
    assert charge_functional(prof) == pytest.approx(1.0, abs=1e-10)
    assert energy_functional(prof) == pytest.approx(lv.eps, rel=1e-8)


@pytest.mark.parametrize("p,lv,prof", PROFILES[:8], ids=IDS[:8])
def test_sobolev_against_adaptive_quadrature(p, lv, prof):
    def f(chi):
        q, dq = radial_eval(prof, chi), radial_derivative(prof, chi)
        return math.sinh(chi) ** 2 * q * q + q * q + math.sinh(chi) ** 2 * dq * dq

    # Q ~ chi^(kappa - 1/2) at the origin and decays like exp(-chi (1 + lambda));
    # the first segment is integrated in log(chi) to tame the endpoint power
    top = 60.0 / (1 + lv.lam)
    near = integrate.quad(lambda t: f(math.exp(t)) * math.exp(t), math.log(CHI_FLOOR), math.log(0.1), limit=400, epsabs=0, epsrel=1e-11)[0]
    parts = [near] + [integrate.quad(f, a, b, limit=400, epsabs=0, epsrel=1e-11)[0] for a, b in [(0.1, 2.0), (2.0, top)]]
    # below the floor the integrand is (1 + (kappa - 1/2)^2) Q^2 with Q^2 ~ chi^(2 kappa - 1)
    q_floor = float(radial_eval(prof, CHI_FLOOR))
    head = (1 + (lv.kappa - 0.5) ** 2) * q_floor**2 * CHI_FLOOR / (2 * lv.kappa)
    assert sobolev_norm(prof) == pytest.approx(sum(parts) + head, rel=1e-6)


@pytest.mark.parametrize("p,lv,prof", PROFILES, ids=IDS)
def test_exp_form_identity(p, lv, prof):
    chi = np.linspace(0.01, 8.0, 60)
    assert np.allclose(exp_form(prof, chi), radial_eval(prof, chi), rtol=1e-12, atol=0)


@pytest.mark.parametrize("p,lv,prof", PROFILES[:6], ids=IDS[:6])
def test_derivative_matches_differences(p, lv, prof):
    chi = np.linspace(0.1, 6.0, 25)
    h = 1e-6
    fd = (radial_eval(prof, chi + h) - radial_eval(prof, chi - h)) / (2 * h)
    assert np.allclose(radial_derivative(prof, chi), fd, rtol=1e-6, atol=1e-9 * np.max(np.abs(fd)))


def test_charge_orthogonality():
    p = DimensionlessParams(30.0, 0.45, 0)
    s0 = [lv for lv in build_spectrum(p).levels if lv.two_l == 0]
    profs = [radial_profile(lv, p) for lv in s0]
    assert len(profs) == 3
    for i in range(3):
        for j in range(3):
            expected = 1.0 if i == j else 0.0
            assert charge_overlap(profs[i], profs[j]) == pytest.approx(expected, abs=1e-9)


def test_overlap_needs_same_channel():
    p = DimensionlessParams(30.0, 0.45, 0)
    lv = build_spectrum(p).levels
    a = radial_profile(next(v for v in lv if v.two_l == 0), p)
    b = radial_profile(next(v for v in lv if v.two_l == 2), p)
    with pytest.raises(DomainError):
        charge_overlap(a, b)


@pytest.mark.parametrize("factor", [0.5, 3.0])
def test_functionals_scale_quadratically(factor):
    p = DimensionlessParams(30.0, 0.45, 0)
    prof = radial_profile(build_spectrum(p).levels[1], p)
    big = prof.scaled(factor)
    assert charge_functional(big) == pytest.approx(factor**2, rel=1e-12)
    assert sobolev_norm(big) == pytest.approx(factor**2 * sobolev_norm(prof), rel=1e-12)
    assert np.allclose(radial_eval(big, 1.0), factor * radial_eval(prof, 1.0))


def test_off_shell_matches_at_eigenvalue():
    p = DimensionlessParams(30.0, 0.45, 0)
    lv = [v for v in build_spectrum(p).levels if v.two_l == 0][1]
    jac = radial_profile(lv, p, normalize=False)
    hyp = off_shell_profile(lv, lv.eps, p)
    chi = np.linspace(0.05, 1.0, 12)
    ratio = radial_eval(hyp, chi) / radial_eval(jac, chi)
    assert np.allclose(ratio, ratio[0], rtol=1e-8)


@pytest.mark.parametrize("case", [(30.0, 0.45, 0), (10.0, 0.3, 0), (50.0, 0.49, 4)])
def test_off_shell_diverges(case):
    p = DimensionlessParams(*case)
    levels = build_spectrum(p).levels
    lv = levels[0]
    same = [v.eps for v in levels if v.two_l == lv.two_l]
    upper = same[1] if len(same) > 1 else math.sqrt(p.mu**2 + 1)
    mid = 0.5 * (same[0] + upper)
    with pytest.raises(DivergentIntegral):
        sobolev_norm(off_shell_profile(lv, mid, p))


def test_sample_grid():
    p = DimensionlessParams(10.0, 0.3, 0)
    prof = radial_profile(build_spectrum(p).levels[0], p)
    chi, x, q, dq = sample(prof, 1e-3, 15.0, 2001)
    assert len(chi) == 2001 and np.all(np.diff(chi) > 0)
    assert np.all(q > 0)
    assert np.allclose(x, -np.expm1(-2 * chi))
    with pytest.raises(DomainError):
        sample(prof, 1e-9, 1.0, 10)
    with pytest.raises(DomainError):
        sample(prof, 1.0, 0.5, 10)
    with pytest.raises(DomainError):
        radial_eval(prof, 1e-10)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-8, 30.0))
def test_chi_to_x_accurate(chi):
    assert chi_to_x(chi) == pytest.approx(-math.expm1(-2 * chi), rel=1e-15)
