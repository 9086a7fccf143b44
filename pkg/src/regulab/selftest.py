"""Oracle-vs-closed-form self checks, runnable from the CLI.

Each check recomputes a closed form against an independent numerical route
(quadrature, brute-force mode sums, extrapolation) and reports one PASS/FAIL
line.  INFO lines report measured discrepancies that are findings rather than
failures: places where an independently derived integrand disagrees with a
commonly quoted variant, and the finite-cutoff convergence rate of the
mode-sum/point-split comparison.
"""

from __future__ import annotations

import cmath
import math

from .core import Regulator
from .flanagan import ConformalMap, WeightFunction, delta_flanagan, delta_pointsplit, delta_tau, qi_bound_rhs, vacuum_tvv
from .numerics import LimitKind, QuadratureSpec, classify_limit, integrate_halfline
from .regulator_lab import AmbiguityExpr, LimitPath, scan_path
from .static_well import WellConfig, mode_solution, r_integral_closed, r_omega, xi_lambda
from .time_step import (
    StepConfig,
    bogoliubov,
    d_term,
    d_term_quadrature,
    mode_reg_density,
    pointsplit_density,
    s_k,
    s_k_deriv,
)

__all__ = ["run_all", "CHECKS"]


def _mulberry(seed: int):
    """Tiny deterministic PRNG (splitmix-style) so checks never depend on
    interpreter hash or library versions."""
    state = seed & 0xFFFFFFFFFFFFFFFF

    def rand() -> float:
        nonlocal state
        state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        z = z ^ (z >> 31)
        return z / 2.0**64

    return rand


def _uniform(rand, lo: float, hi: float) -> float:
    return lo + (hi - lo) * rand()


def check_halfline_examples():
    spec = QuadratureSpec()
    r1 = integrate_halfline(lambda w: 1.0, 1.0, spec)
    r2 = integrate_halfline(lambda w: w, 0.5, spec)
    r3 = integrate_halfline(
        lambda w: w * cmath.exp(-0.3j * w), 0.1, spec, osc_freq=0.3
    )
    errs = (
        abs(r1.value - 1.0),
        abs(r2.value - 4.0),
        abs(r3.value - complex(-8.0, -6.0)),
    )
    ok = max(errs) < 1e-8
    return ok, f"cutoff integrals vs closed forms: max |err| = {max(errs):.2e}"


def check_static_remainder_closed_form():
    cfg = WellConfig(1.0, 1.0)
    spec = QuadratureSpec()
    worst = 0.0
    for tau in (0.01, 0.1, 1.0):
        for f0 in (0.0, 0.25, 0.5):
            for f1 in (0.0, 0.25, 0.5):
                reg = Regulator(f0 * tau, f1 * tau, tau)
                closed = r_integral_closed(cfg, reg)
                quad = integrate_halfline(
                    lambda w: r_omega(cfg, w, reg),
                    tau,
                    spec,
                    osc_freq=max(reg.eps0, reg.eps1),
                )
                worst = max(
                    worst,
                    abs(closed - quad.value.real) / max(abs(closed), 1e-12),
                )
    return worst < 1e-6, f"static remainder closed form vs quadrature: worst rel = {worst:.2e}"


def check_dterm_closed_form():
    cfg = StepConfig(1.0, 1.0)
    spec = QuadratureSpec()
    worst = 0.0
    for tau in (0.01, 0.1, 1.0):
        for f0 in (0.0, 0.25, 0.5):
            for f1 in (0.0, 0.25, 0.5):
                reg = Regulator(f0 * tau, f1 * tau, tau)
                closed = d_term(cfg, reg)
                quad = d_term_quadrature(cfg, reg, spec, massless=True)
                worst = max(
                    worst, abs(closed - quad.value.real) / max(abs(closed), 1e-12)
                )
    return worst < 1e-6, f"small-split gap closed form vs quadrature: worst rel = {worst:.2e}"


def info_dterm_mass_correction():
    cfg = StepConfig(1.0, 1.0)
    reg = Regulator(0.001, 0.002, 0.05)
    massless = d_term_quadrature(cfg, reg, massless=True).value.real
    massive = d_term_quadrature(cfg, reg, massless=False).value.real
    return True, (
        "finite-mass correction to the small-split gap at "
        f"(0.001, 0.002, 0.05): massless {massless:.6e}, with omega(k) "
        f"{massive:.6e}, difference {massive - massless:+.3e}"
    )


def check_mode_identities():
    rand = _mulberry(7)
    worst_sum = worst_ratio = 0.0
    for _ in range(200):
        cfg = StepConfig(_uniform(rand, 0.0, 5.0), _uniform(rand, 0.1, 3.0))
        k = _uniform(rand, -20.0, 20.0)
        pair = bogoliubov(cfg, k)
        omega = math.hypot(k, cfg.m)
        big_e = math.sqrt(omega**2 + cfg.lam)
        worst_sum = max(worst_sum, abs(pair.a_k + pair.b_k - 1.0))
        worst_ratio = max(
            worst_ratio, abs(pair.b_k**2 - pair.a_k**2 - omega / big_e)
        )
        jump_v = abs(s_k(cfg, k, 0.0) - 1.0)
        jump_d = abs(s_k_deriv(cfg, k, 0.0) - (-1j * omega))
        worst_sum = max(worst_sum, jump_v, jump_d / max(1.0, omega))
    ok = worst_sum < 1e-13 and worst_ratio < 1e-15
    return ok, (
        f"Bogoliubov identities and switch-on continuity: "
        f"worst sum/continuity {worst_sum:.2e}, worst b^2-a^2 {worst_ratio:.2e}"
    )


def _xi_brute_force(cfg: WellConfig, omega: float, reg: Regulator, x: float) -> float:
    """Independent route to xi_lambda: build both mode functions as complex
    interior waves from their amplitude alone and apply the defining bilinear."""
    lam, a = cfg.lam, cfg.a
    q = cmath.sqrt(complex(omega * omega - lam, 0.0))
    y1 = x + reg.eps1 / 2.0
    y1p = x - reg.eps1 / 2.0
    total = 0.0
    for j in (1, 2):
        amp_sq = mode_solution(cfg, j, omega).amp_sq
        amp = cmath.sqrt(complex(amp_sq, 0.0))
        if j == 1:
            chi = lambda u: amp * cmath.cos(u * q)
            dchi = lambda u: -amp * q * cmath.sin(u * q)
        else:
            chi = lambda u: amp * cmath.sin(u * q)
            dchi = lambda u: amp * q * cmath.cos(u * q)
        pref = cmath.exp(-1j * omega * reg.eps0) / (8.0 * math.pi * omega)
        z = pref * (
            omega * omega * chi(y1) * chi(y1p).conjugate()
            + dchi(y1) * dchi(y1p).conjugate()
        )
        total += 2.0 * z.real
    return total


def check_xi_consistency():
    cfg = WellConfig(1.0, 1.0)
    rand = _mulberry(11)
    worst = 0.0
    for _ in range(50):
        omega = _uniform(rand, 0.05, 12.0)
        if abs(omega * omega - cfg.lam) < 1e-3:
            omega += 0.1
        reg = Regulator(_uniform(rand, 0.0, 0.3), _uniform(rand, 0.0, 0.3), 0.0)
        x = _uniform(rand, -0.8, 0.8)
        worst = max(
            worst, abs(xi_lambda(cfg, omega, reg, x) - _xi_brute_force(cfg, omega, reg, x))
        )
    return worst < 1e-12, (
        f"fused interior density vs per-mode bilinear: worst |diff| = {worst:.2e}"
    )


def info_xi_displayed_variants():
    cfg = WellConfig(1.0, 1.0)
    omega, x = 2.0, 0.3
    reg = Regulator(0.02, 0.01, 0.0)
    ours = xi_lambda(cfg, omega, reg, x)
    a1 = mode_solution(cfg, 1, omega).amp_sq
    a2 = mode_solution(cfg, 2, omega).amp_sq
    q = math.sqrt(omega**2 - cfg.lam)
    flipped = (2.0 * math.cos(omega * reg.eps0) / (8.0 * math.pi)) * (
        (a1 + a2) * (omega - cfg.lam / (2 * omega)) * math.cos(reg.eps1 * q)
        + (a2 - a1) * (cfg.lam / (2 * omega)) * math.cos(2 * x * q)
    )
    return True, (
        "interior density interference term carries the opposite sign to one "
        f"commonly quoted closed form: derived {ours:.9f}, sign-flipped "
        f"variant {flipped:.9f} (difference {ours - flipped:+.3e}); the "
        "per-mode route also needs prefactor 1/(8 pi omega), not 1/(4 pi omega)"
    )


def info_pointsplit_cross_term():
    from .time_step import bogoliubov as _bog, pointsplit_integrand as _psi

    cfg = StepConfig(1.0, 1.0)
    k, t = 2.7, 0.9
    reg = Regulator(0.11, 0.07, 0.0)
    full = _psi(cfg, k, t, reg)
    pair = _bog(cfg, k)
    omega = math.hypot(k, cfg.m)
    big_e = math.sqrt(omega**2 + cfg.lam)
    cross = (
        2.0
        * (-2.0 * cfg.lam * pair.a_k * pair.b_k * math.cos(2.0 * big_e * t)
           * cmath.exp(1j * k * reg.eps1)).real
        / (8.0 * omega)
    )
    return True, (
        "the two-frequency bilinear keeps an a_k*b_k*cos(2Et) cross term that "
        "a commonly quoted form drops; without it the coincidence limit would "
        f"not reduce to the per-mode energy change (size here: {cross:+.3e} "
        f"of a total {full:+.3e})"
    )


def check_equivalence_trend():
    cfg = StepConfig(1.0, 1.0)
    spec = QuadratureSpec(rel_tol=1e-9)
    mode = mode_reg_density(cfg, 1.0, spec).value
    residuals = []
    for s in (0.2, 0.1, 0.05):
        reg = Regulator(s * s, s * s, s)
        ps = pointsplit_density(cfg, 1.0, reg, spec).value
        residuals.append(abs(ps - d_term(cfg, reg) - mode))
    monotone = residuals[0] > residuals[1] > residuals[2]
    rel = residuals[-1] / mode
    detail = (
        "point-split minus gap minus mode-sum along eps=(s^2,s^2), tau=s: "
        f"residuals {residuals[0]:.3e} > {residuals[1]:.3e} > {residuals[2]:.3e}"
        f" (monotone: {monotone}); at s=0.05 the residual is {rel:.1%} of the "
        "mode-sum value -- the cutoff weight biases the integral at first "
        "order in tau, so the two agree only in the tau -> 0 limit"
    )
    return monotone, detail


def check_flanagan_orders():
    V = ConformalMap.from_text("exp(v)")
    taylor = delta_flanagan(V, 0.0)
    tau_first = delta_tau(V, 0.0, 0.1)
    target = -1.0 / (48.0 * math.pi)
    exact_disagreement = tau_first == 0.0 and abs(taylor - target) < 1e-12
    worst = 0.0
    for tau in (0.01, 0.3, 2.0):
        a = delta_pointsplit(V, 0.7, 0.7, tau)
        b = delta_tau(V, 0.7, tau)
        worst = max(worst, abs(a.real - b) / abs(b), abs(a.imag))
    deltas = [0.2 * 2.0**-j for j in range(7)]
    rich = classify_limit(
        [(d, delta_pointsplit(V, 0.3, 0.3 - d, 0.0)) for d in deltas]
    )
    rich_ok = rich.kind is LimitKind.FINITE and abs(
        rich.value.real - delta_flanagan(V, 0.3)
    ) < 1e-7
    ok = exact_disagreement and worst < 1e-14 and rich_ok
    return ok, (
        f"order of limits: split-first gives {taylor:.9f}, cutoff-first gives "
        f"{tau_first}; coincidence identity worst rel {worst:.2e}; "
        f"extrapolated split-first limit matches to "
        f"{abs(rich.value.real - delta_flanagan(V, 0.3)):.2e}"
    )


def check_vacuum_tvv():
    spec = QuadratureSpec()
    worst = 0.0
    for dv in (0.1, 1.0):
        for tau in (0.05, 0.5):
            closed = vacuum_tvv(dv, 0.0, tau)
            quad = integrate_halfline(
                lambda w: w * cmath.exp(-1j * w * dv), tau, spec, osc_freq=dv
            )
            worst = max(worst, abs(closed - quad.value / (4.0 * math.pi)) / abs(closed))
    return worst < 1e-8, f"vacuum density closed form vs quadrature: worst rel = {worst:.2e}"


def check_qi_gaussian():
    rho = WeightFunction.from_text("exp(-(x/2)^2)/(2*sqrt(pi))", (-30.0, 30.0))
    bound = qi_bound_rhs(rho).value
    target = -1.0 / (48.0 * math.pi)
    rho_half = WeightFunction.from_text("exp(-(x/1)^2)/(1*sqrt(pi))", (-20.0, 20.0))
    bound_half = qi_bound_rhs(rho_half).value
    ok = abs(bound - target) < 1e-8 and abs(bound_half / bound - 4.0) < 1e-8
    return ok, (
        f"gaussian bound {bound:.9f} vs analytic {target:.9f}; halving the "
        f"width scales it by {bound_half / bound:.9f}"
    )


def check_ratio_regimes():
    sched = [0.2 * 2.0**-j for j in range(8)]
    expr = AmbiguityExpr.ratio239()
    fast_tail = scan_path(expr, LimitPath(2, 1, 2), sched)
    fast_split = scan_path(expr, LimitPath(1, 2, 1), sched)
    null_split = scan_path(expr, LimitPath(1, 1, 1, ctau=0.0), sched)
    gap = scan_path(AmbiguityExpr.d_term616(1.0), LimitPath(2, 2, 1), sched)
    ok = (
        fast_tail.outcome.kind is LimitKind.FINITE
        and abs(fast_tail.outcome.value - 1.0) < 1e-6
        and fast_split.outcome.kind is LimitKind.FINITE
        and abs(fast_split.outcome.value) < 1e-6
        and null_split.outcome.kind is LimitKind.DIVERGENT
        and null_split.outcome.confidence == 0.0
        and gap.outcome.kind is LimitKind.FINITE
        and abs(gap.outcome.value) < 1e-6
    )
    return ok, (
        "split-ratio regimes -> 1 (off by "
        f"{abs(fast_tail.outcome.value - 1.0):.2e}), 0 (off by "
        f"{abs(fast_split.outcome.value):.2e}), divergent (on-path singularity "
        f"at s={null_split.singular_s}); recommended path sends the "
        f"mode-vs-pointsplit gap to {abs(gap.outcome.value):.2e}"
    )


CHECKS = [
    ("halfline-examples", check_halfline_examples),
    ("static-remainder-closed-form", check_static_remainder_closed_form),
    ("small-split-gap-closed-form", check_dterm_closed_form),
    ("mode-identities", check_mode_identities),
    ("interior-density-consistency", check_xi_consistency),
    ("equivalence-trend", check_equivalence_trend),
    ("flanagan-orders", check_flanagan_orders),
    ("vacuum-density", check_vacuum_tvv),
    ("qi-gaussian-bound", check_qi_gaussian),
    ("limit-regimes", check_ratio_regimes),
]

INFOS = [
    ("small-split-gap-mass-correction", info_dterm_mass_correction),
    ("interior-density-displayed-variants", info_xi_displayed_variants),
    ("pointsplit-integrand-cross-term", info_pointsplit_cross_term),
]


def run_all(write=print) -> bool:
    """Run every check, emit one line each, and return overall success."""
    all_ok = True
    for name, fn in CHECKS:
        ok, detail = fn()
        all_ok = all_ok and ok
        write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    for name, fn in INFOS:
        _, detail = fn()
        write(f"INFO {name}: {detail}")
    write(f"{'OK' if all_ok else 'FAILED'}: {sum(1 for _ in CHECKS)} checks")
    return all_ok
