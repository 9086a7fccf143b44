"""Square-well scattering modes and the point-split kinetic energy density.

The potential is a constant barrier lam on |x| < a and zero outside; modes
come in a symmetric (j=1) and an antisymmetric (j=2) family.  Below the
barrier top (omega^2 < lam) all trigonometric functions of
q = sqrt(omega^2 - lam) continue to hyperbolic ones; everything here is
written in terms of the entire functions cos(c*sqrt(z)) and sinc(c*sqrt(z))
of z = omega^2 - lam, so no branch or 0/0 trouble arises anywhere, including
the removable point omega^2 = lam of the antisymmetric family.

The renormalized density inside the well is a frequency integral of a
subtracted per-mode density plus a slowly-decaying remainder whose cutoff
integral has an elementary closed form; the closed form is what carries the
entire dependence on how (eps0, eps1, tau) -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .core import DensityResult, Regulator
from .errors import InvalidCutoff, InvalidFrequency, OutsideRegionI, SingularRegulator
from .numerics import QuadratureSpec, integrate_halfline

__all__ = [
    "WellConfig",
    "ModeParity",
    "ModeSolution",
    "mode_solution",
    "chi_inside",
    "chi_outside",
    "xi_lambda",
    "xi_free",
    "r_omega",
    "s_omega",
    "r_integral_closed",
    "t00r_static",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class WellConfig:
    """Barrier strength lam >= 0 (1/length^2) and half-width a > 0."""

    lam: float
    a: float

    def __post_init__(self):
        if not (self.lam >= 0.0) or not math.isfinite(self.lam):
            raise ValueError(f"lam must be finite and >= 0, got {self.lam}")
        if not (self.a > 0.0) or not math.isfinite(self.a):
            raise ValueError(f"a must be finite and > 0, got {self.a}")


class ModeParity(IntEnum):
    SYMMETRIC = 1
    ANTISYMMETRIC = 2


@dataclass(frozen=True)
class ModeSolution:
    """Interior amplitude squared and exterior phase of one scattering mode.

    Below the barrier top the antisymmetric amp_sq continues to negative
    values (the interior coefficient turns imaginary while the mode itself
    stays real); it passes through a pole at omega^2 = lam.
    """

    j: ModeParity
    omega: float
    amp_sq: float
    phase: float


def _cos_sqrt(z: float, c: float) -> float:
    """cos(c*sqrt(z)) continued to z < 0 (= cosh(c*sqrt(-z)))."""
    if z >= 0.0:
        return math.cos(c * math.sqrt(z))
    return math.cosh(c * math.sqrt(-z))


def _sinc_sqrt(z: float, c: float) -> float:
    """sin(c*sqrt(z))/(c*sqrt(z)) continued to z < 0; entire in z."""
    w2 = c * c * z
    if abs(w2) < 1e-12:
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0
    if w2 > 0.0:
        w = math.sqrt(w2)
        return math.sin(w) / w
    w = math.sqrt(-w2)
    return math.sinh(w) / w


def _interior_denominators(cfg: WellConfig, omega: float) -> tuple[float, float, float]:
    """(n1, n2, z): amp_sq_j = omega^2 / n_j, with n1 = omega^2 - lam*sin^2(a q)
    and n2 = omega^2 - lam*cos^2(a q) = z*(1 + lam*a^2*sinc^2)."""
    z = omega * omega - cfg.lam
    sa = _sinc_sqrt(z, cfg.a)
    shared = 1.0 + cfg.lam * cfg.a * cfg.a * sa * sa
    n1 = cfg.lam + z * (2.0 - shared)
    n2 = z * shared
    return n1, n2, z


def mode_solution(cfg: WellConfig, j: ModeParity | int, omega: float) -> ModeSolution:
    """Closed-form amplitude and phase of the j-th family at frequency omega.

    The phase is the exterior phase shift, chosen in its 2*pi class nearest 0
    so that the interior and exterior pieces match with consistent sign.
    """
    if not (omega > 0.0) or not math.isfinite(omega):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    j = ModeParity(j)
    n1, n2, z = _interior_denominators(cfg, omega)
    sa = _sinc_sqrt(z, cfg.a)
    ca = _cos_sqrt(z, cfg.a)
    shared = 1.0 + cfg.lam * cfg.a * cfg.a * sa * sa

    if j is ModeParity.SYMMETRIC:
        amp_sq = omega * omega / n1
        rn1 = math.sqrt(n1)
        # boundary data: chi(a) and chi'(a)/(-omega) of the interior solution
        cos_part = omega * ca / rn1
        sin_part = z * cfg.a * sa / rn1
        theta = math.atan2(sin_part, cos_part)
    else:
        amp_sq = math.inf if n2 == 0.0 else omega * omega / n2
        rs = math.sqrt(shared)
        sin_part = omega * cfg.a * sa / rs
        cos_part = ca / rs
        theta = math.atan2(sin_part, cos_part)
    delta = theta - omega * cfg.a
    delta -= _TWO_PI * round(delta / _TWO_PI)
    return ModeSolution(j, omega, amp_sq, delta)


def chi_inside(cfg: WellConfig, j: ModeParity | int, omega: float, x: float) -> tuple[float, float]:
    """(value, derivative) of the interior mode function at x, |x| < a."""
    if not (omega > 0.0):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    j = ModeParity(j)
    n1, _, z = _interior_denominators(cfg, omega)
    sa = _sinc_sqrt(z, cfg.a)
    shared = 1.0 + cfg.lam * cfg.a * cfg.a * sa * sa
    cx = _cos_sqrt(z, x)
    sx = _sinc_sqrt(z, x)
    if j is ModeParity.SYMMETRIC:
        rn1 = math.sqrt(n1)
        return omega * cx / rn1, -omega * z * x * sx / rn1
    rs = math.sqrt(shared)
    return omega * x * sx / rs, omega * cx / rs


def chi_outside(cfg: WellConfig, j: ModeParity | int, omega: float, x: float) -> tuple[float, float]:
    """(value, derivative) of the exterior mode function at x, |x| > a."""
    sol = mode_solution(cfg, j, omega)
    if ModeParity(j) is ModeParity.SYMMETRIC:
        arg = omega * abs(x) + sol.phase
        sgn = 1.0 if x >= 0.0 else -1.0
        return math.cos(arg), -sgn * omega * math.sin(arg)
    arg = omega * x + sol.phase * (1.0 if x > 0.0 else -1.0)
    return math.sin(arg), omega * math.cos(arg)


def _check_region(cfg: WellConfig, reg: Regulator, x: float):
    if abs(x) + reg.eps1 / 2.0 >= cfg.a:
        raise OutsideRegionI(
            f"x outside |x|<a: need |x| + eps1/2 < a = {cfg.a}, got x = {x}, eps1 = {reg.eps1}"
        )


def _interior_ratios(cfg: WellConfig, omega: float, reg: Regulator, x: float) -> float:
    """Sum over both families of the per-mode interior bilinear, divided by
    the common factor omega*cos(omega*eps0)/(4*pi).  Fused so that the 1/omega
    and the omega^2 -> lam cancellations happen analytically."""
    lam, a = cfg.lam, cfg.a
    z = omega * omega - lam
    y1 = x + reg.eps1 / 2.0
    y1p = x - reg.eps1 / 2.0
    ce = _cos_sqrt(z, reg.eps1)
    sy = _sinc_sqrt(z, y1)
    syp = _sinc_sqrt(z, y1p)
    sa = _sinc_sqrt(z, a)
    shared = 1.0 + lam * a * a * sa * sa
    cross = lam * y1 * y1p * sy * syp
    ratio2 = (ce + cross) / shared
    ratio1 = ((lam + z) * ce - z * cross) / (lam + z * (2.0 - shared))
    return ratio1 + ratio2


def xi_lambda(cfg: WellConfig, omega: float, reg: Regulator, x: float, t: float = 0.0) -> float:
    """Point-split per-frequency kinetic density inside the well.

    The time dependence drops out of the vacuum bilinear (the split enters
    only through cos(omega*eps0)); t is accepted for interface uniformity.
    """
    if not (omega > 0.0) or not math.isfinite(omega):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    _check_region(cfg, reg, x)
    pref = omega * math.cos(omega * reg.eps0) / (4.0 * math.pi)
    return pref * _interior_ratios(cfg, omega, reg, x)


def xi_free(omega: float, reg: Regulator) -> float:
    """Free-field counterpart of xi_lambda (lam = 0), independent of x."""
    if not (omega > 0.0):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    return omega * math.cos(omega * reg.eps0) * math.cos(omega * reg.eps1) / _TWO_PI


def r_omega(cfg: WellConfig, omega: float, reg: Regulator) -> float:
    """Slowly-decaying remainder isolated from xi_lambda - xi_free; its cutoff
    integral is r_integral_closed."""
    if not (omega > 0.0):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    return (
        cfg.lam
        / (4.0 * math.pi)
        * reg.eps1
        * math.cos(omega * reg.eps0)
        * math.sin(omega * reg.eps1)
    )


def s_omega(cfg: WellConfig, omega: float, reg: Regulator, x: float, t: float = 0.0) -> float:
    """Integrable part of the subtracted density: (xi_lambda - xi_free) - r_omega."""
    if not (omega > 0.0) or not math.isfinite(omega):
        raise InvalidFrequency(f"omega must be > 0, got {omega}")
    _check_region(cfg, reg, x)
    ratios = _interior_ratios(cfg, omega, reg, x) - 2.0 * math.cos(omega * reg.eps1)
    pref = omega * math.cos(omega * reg.eps0) / (4.0 * math.pi)
    return pref * ratios - r_omega(cfg, omega, reg)


def r_integral_closed(cfg: WellConfig, reg: Regulator) -> float:
    """Elementary closed form of the cutoff integral of r_omega.

    Divergent directions of (eps0, eps1, tau) -> 0 show up here as a vanishing
    complex denominator, reported as SingularRegulator.
    """
    e0, e1, tau = reg.eps0, reg.eps1, reg.tau
    den = complex(e1 * e1 - e0 * e0 + tau * tau, -2.0 * tau * e0)
    if den == 0:
        raise SingularRegulator(
            f"eps1^2 - eps0^2 + tau^2 and eps0*tau both vanish at {reg}"
        )
    return cfg.lam / (8.0 * math.pi) * 2.0 * (e1 * e1 / den).real


def t00r_static(
    cfg: WellConfig,
    reg: Regulator,
    x: float,
    t: float = 0.0,
    spec: QuadratureSpec | None = None,
) -> DensityResult:
    """Renormalized point-split kinetic energy density inside the well.

    Quadrature of s_omega under the cutoff weight, plus the closed form for
    the remainder integral.
    """
    if not (reg.tau > 0.0):
        raise InvalidCutoff(f"tau must be > 0, got {reg.tau}")
    _check_region(cfg, reg, x)
    spec = spec or QuadratureSpec()
    if cfg.lam == 0.0:
        return DensityResult(0.0, 0.0, reg)
    osc = max(reg.eps0, reg.eps1, 2.0 * cfg.a, 2.0 * abs(x))
    quad = integrate_halfline(
        lambda w: s_omega(cfg, w, reg, x, t), reg.tau, spec, osc_freq=osc
    )
    value = quad.value.real + r_integral_closed(cfg, reg)
    return DensityResult(value, quad.error_estimate, reg)
