"""Sudden switch-on of a constant potential: mode-sum vs point-split density.

At t = 0 the potential jumps from 0 to lam, so each travelling mode of
frequency omega = sqrt(k^2 + m^2) continues with frequency
E = sqrt(omega^2 + lam) and a Bogoliubov mixture of both signs.  The
renormalized kinetic energy density can then be computed two ways:

* mode_reg_density sums the per-mode energy change directly (no splitting);
* pointsplit_density point-splits the two-point function with offsets
  (eps0, eps1) and a frequency cutoff tau.

Their difference is carried by a slowly-decaying remainder of the point-split
integrand whose cutoff integral, in the small-split regime, is the closed
form d_term; d_term depends only on how (eps0, eps1, tau) -> 0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import DensityResult, Regulator
from .errors import (
    InvalidCutoff,
    SingularRegulator,
    SplitStraddlesStep,
    ZeroFrequency,
)
from .numerics import QuadratureResult, QuadratureSpec, integrate_interval, integrate_realline

__all__ = [
    "StepConfig",
    "BogoliubovPair",
    "bogoliubov",
    "s_k",
    "s_k_deriv",
    "delta_xi_k",
    "pointsplit_integrand",
    "r_k_integrand",
    "s_k_integrand",
    "mode_reg_density",
    "pointsplit_density",
    "d_term",
    "d_term_value",
    "d_term_quadrature",
]


@dataclass(frozen=True)
class StepConfig:
    """Step height lam (may be negative as long as m^2 + lam > 0) and mass m."""

    lam: float
    m: float

    def __post_init__(self):
        if not math.isfinite(self.lam) or not math.isfinite(self.m):
            raise ValueError("lam and m must be finite")
        if self.m < 0.0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.m * self.m + self.lam <= 0.0:
            raise ValueError("need m^2 + lam > 0 so every mode keeps oscillating")


@dataclass(frozen=True)
class BogoliubovPair:
    """Mixing amplitudes across the switch-on: a_k + b_k = 1, b^2 - a^2 = omega/E."""

    a_k: float
    b_k: float


def _freqs(cfg: StepConfig, k: float) -> tuple[float, float]:
    omega = math.hypot(k, cfg.m)
    if omega == 0.0:
        raise ZeroFrequency("k = 0 with m = 0 has no positive frequency")
    return omega, math.sqrt(omega * omega + cfg.lam)


def bogoliubov(cfg: StepConfig, k: float) -> BogoliubovPair:
    """Mixing pair of the mode k across the sudden switch-on."""
    omega, big_e = _freqs(cfg, k)
    r = omega / big_e
    return BogoliubovPair(0.5 * (1.0 - r), 0.5 * (1.0 + r))


def s_k(cfg: StepConfig, k: float, t: float) -> complex:
    """Time factor of mode k: pure e^(-i omega t) before the switch, a
    two-frequency mixture after it; value and slope are continuous at t = 0."""
    omega, big_e = _freqs(cfg, k)
    if t < 0.0:
        return cmath.exp(-1j * omega * t)
    pair = bogoliubov(cfg, k)
    return pair.a_k * cmath.exp(1j * big_e * t) + pair.b_k * cmath.exp(-1j * big_e * t)


def s_k_deriv(cfg: StepConfig, k: float, t: float) -> complex:
    """d/dt of s_k."""
    omega, big_e = _freqs(cfg, k)
    if t < 0.0:
        return -1j * omega * cmath.exp(-1j * omega * t)
    pair = bogoliubov(cfg, k)
    return 1j * big_e * (
        pair.a_k * cmath.exp(1j * big_e * t) - pair.b_k * cmath.exp(-1j * big_e * t)
    )


def delta_xi_k(cfg: StepConfig, k: float, t: float) -> float:
    """Per-mode kinetic energy change at t > 0, scaled by the box length."""
    omega, big_e = _freqs(cfg, k)
    return (
        cfg.lam * cfg.lam / (8.0 * omega * big_e * big_e) * (1.0 - math.cos(2.0 * big_e * t))
    )


def pointsplit_integrand(cfg: StepConfig, k: float, t: float, reg: Regulator) -> float:
    """Point-split per-mode density difference (switched minus free), scaled
    by the box length; both split times are taken on the post-switch side.
    Includes the cross term a_k*b_k*cos(2Et) that the two-frequency bilinear
    produces; at coincidence it reduces exactly to delta_xi_k."""
    omega, big_e = _freqs(cfg, k)
    pair = bogoliubov(cfg, k)
    phase_x = cmath.exp(1j * k * reg.eps1)
    mixed = (
        (2.0 * omega * omega + cfg.lam)
        * (
            pair.a_k * pair.a_k * cmath.exp(1j * big_e * reg.eps0)
            + pair.b_k * pair.b_k * cmath.exp(-1j * big_e * reg.eps0)
        )
        - 2.0 * cfg.lam * pair.a_k * pair.b_k * math.cos(2.0 * big_e * t)
    )
    free = 2.0 * omega * omega * cmath.exp(-1j * omega * reg.eps0)
    return (2.0 * ((mixed - free) * phase_x).real) / (8.0 * omega)


def r_k_integrand(cfg: StepConfig, k: float, reg: Regulator, massless: bool = False) -> float:
    """Slowly-decaying remainder split off the point-split integrand, scaled
    by the box length; `massless` replaces omega by |k| (the small-split
    regime in which d_term is derived)."""
    omega = abs(k) if massless else math.hypot(k, cfg.m)
    return -(cfg.lam * reg.eps0 / 4.0) * math.sin(k * reg.eps1 - omega * reg.eps0)


def s_k_integrand(cfg: StepConfig, k: float, t: float, reg: Regulator) -> float:
    """pointsplit_integrand minus r_k_integrand."""
    return pointsplit_integrand(cfg, k, t, reg) - r_k_integrand(cfg, k, reg)


def _constant_part_integral(cfg: StepConfig) -> float:
    """Closed form of the non-oscillatory integral over all k of
    1/(omega * E^2): elementary after k = m*sinh(u)."""
    lam, m = cfg.lam, cfg.m
    b = math.sqrt(m * m + lam)
    if lam > 0.0:
        rl = math.sqrt(lam)
        return 2.0 * math.atanh(rl / b) / (rl * b)
    if lam < 0.0:
        rl = math.sqrt(-lam)
        return 2.0 * math.atan(rl / b) / (rl * b)
    return 2.0 / (m * m)


def mode_reg_density(
    cfg: StepConfig, t: float, spec: QuadratureSpec | None = None
) -> DensityResult:
    """Renormalized kinetic energy density at t > 0 from the mode sum.

    The non-oscillatory piece of the k-integral is elementary; the cos(2Et)
    piece is integrated adaptively and truncated where an integration-by-parts
    bound on its tail drops below tolerance.  Requires m > 0: at zero mass the
    per-mode 1/omega makes the integrand non-integrable at k = 0.
    """
    spec = spec or QuadratureSpec()
    if cfg.m <= 0.0:
        raise ValueError("mode_reg_density requires m > 0")
    if t < 0.0:
        raise ValueError("density is defined after the switch-on, t >= 0")
    if t == 0.0 or cfg.lam == 0.0:
        return DensityResult(0.0, 0.0, None)

    pref = cfg.lam * cfg.lam / (16.0 * math.pi)
    steady = _constant_part_integral(cfg)
    scale = pref * steady
    tol = max(spec.abs_tol, spec.rel_tol * scale)
    # oscillatory tail beyond K: |integral| <= 2 g(K)/(2t) with g ~ 1/k^3
    k_min = 50.0 * (cfg.m + math.sqrt(cfg.m * cfg.m + abs(cfg.lam)) + 1.0)
    k_cut = max(k_min, (4.0 * pref / (t * tol)) ** (1.0 / 3.0))

    def oscillating(k: float) -> float:
        omega = math.hypot(k, cfg.m)
        big_e2 = omega * omega + cfg.lam
        return math.cos(2.0 * math.sqrt(big_e2) * t) / (omega * big_e2)

    quad = integrate_interval(oscillating, 0.0, k_cut, spec, osc_freq=2.0 * t)
    omega_cut = math.hypot(k_cut, cfg.m)
    e_cut = math.sqrt(omega_cut * omega_cut + cfg.lam)
    # integration-by-parts bound 2 g(K)/h'(K) on the dropped oscillatory tail
    tail = e_cut / (omega_cut * e_cut * e_cut * t * k_cut)
    value = pref * (steady - 2.0 * quad.value.real)
    err = pref * 2.0 * (quad.error_estimate + tail)
    return DensityResult(value, err, None)


def pointsplit_density(
    cfg: StepConfig,
    t: float,
    reg: Regulator,
    spec: QuadratureSpec | None = None,
) -> DensityResult:
    """Renormalized point-split density at t > 0 under the cutoff weight.

    Integrates the full subtracted integrand (remainder included, so the
    split into s_k_integrand + r_k_integrand recombines exactly) over the
    whole k-line.
    """
    spec = spec or QuadratureSpec()
    if not (reg.tau > 0.0):
        raise InvalidCutoff(f"tau must be > 0, got {reg.tau}")
    if reg.eps0 >= 2.0 * t:
        raise SplitStraddlesStep(
            f"need eps0 < 2t so both split times stay past the switch; got "
            f"eps0 = {reg.eps0}, t = {t}"
        )
    if cfg.m <= 0.0:
        raise ValueError("pointsplit_density requires m > 0")
    if cfg.lam == 0.0:
        return DensityResult(0.0, 0.0, reg)

    def weighted(k: float) -> float:
        omega = math.hypot(k, cfg.m)
        return pointsplit_integrand(cfg, k, t, reg) * math.exp(-omega * reg.tau)

    osc = max(2.0 * t, reg.eps0 + reg.eps1)
    quad = integrate_realline(weighted, reg.tau, spec, osc_freq=osc)
    two_pi = 2.0 * math.pi
    return DensityResult(quad.value.real / two_pi, quad.error_estimate / two_pi, reg)


def d_term_value(lam: float, eps0: float, eps1: float, tau: float) -> float:
    """Closed form of the remainder's cutoff integral in the small-split
    regime (omega -> |k|); homogeneous of degree 0 in (eps0, eps1, tau)."""
    den = complex(eps1 * eps1 - eps0 * eps0 + tau * tau, 2.0 * eps0 * tau)
    if den == 0:
        raise SingularRegulator(
            f"eps1^2 - eps0^2 + tau^2 and eps0*tau both vanish at "
            f"({eps0}, {eps1}, {tau})"
        )
    return -(lam * eps0 / (8.0 * math.pi)) * 2.0 * (complex(eps0, -tau) / den).real


def d_term(cfg: StepConfig, reg: Regulator) -> float:
    """Regulator-dependent gap between point-split and mode-sum densities."""
    return d_term_value(cfg.lam, reg.eps0, reg.eps1, reg.tau)


def d_term_quadrature(
    cfg: StepConfig,
    reg: Regulator,
    spec: QuadratureSpec | None = None,
    massless: bool = True,
) -> QuadratureResult:
    """Direct cutoff quadrature of the remainder integrand.

    With massless=True both the integrand and the cutoff use |k| in place of
    omega, matching the regime in which d_term is exact; with massless=False
    the physical omega is kept, which measures the finite-mass correction to
    d_term."""
    spec = spec or QuadratureSpec()
    if not (reg.tau > 0.0):
        raise InvalidCutoff(f"tau must be > 0, got {reg.tau}")

    def weighted(k: float) -> float:
        omega = abs(k) if massless else math.hypot(k, cfg.m)
        return r_k_integrand(cfg, k, reg, massless=massless) * math.exp(-omega * reg.tau)

    osc = max(reg.eps0 + reg.eps1, 1e-30)
    quad = integrate_realline(weighted, reg.tau, spec, osc_freq=osc)
    return QuadratureResult(
        quad.value / (2.0 * math.pi), quad.error_estimate / (2.0 * math.pi), quad.evaluations
    )
