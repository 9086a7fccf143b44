"""Adaptive quadrature and limit classification.

Integrals over [0, inf) carry an exponential cutoff weight e^(-omega*tau) and
are truncated where the weight is negligible; a sampled bound on the dropped
tail is folded into the error estimate.  The panel integrator is a classic
Gauss 7 / Kronrod 15 embedded pair with greedy bisection of the worst panel.

`classify_limit` extrapolates a sequence of samples taken along a shrinking
scale parameter s and decides whether the s -> 0 limit is finite, divergent,
or undecidable from the data.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .errors import InvalidCutoff, ToleranceNotMet, TooFewSamples

__all__ = [
    "QuadratureSpec",
    "QuadratureResult",
    "LimitKind",
    "LimitOutcome",
    "integrate_interval",
    "integrate_halfline",
    "integrate_realline",
    "classify_limit",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive integrator.

    max_subdivisions counts adaptive bisections, on top of the initial
    paneling.  tail_truncation_multiple T means half-line integrals are cut at
    omega = T/tau, where the cutoff weight is e^(-T).
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000
    tail_truncation_multiple: float = 60.0

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.tail_truncation_multiple < 10.0:
            raise ValueError("tail_truncation_multiple must be >= 10")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


# Kronrod-15 node magnitudes on [-1, 1] and the paired weights; nodes with odd
# index form the embedded Gauss-7 rule.
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_WGK_CENTER = 0.209482141084728
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119)
_WG_CENTER = 0.417959183673469


def _gk15(f: Callable[[float], complex], a: float, b: float) -> tuple[complex, float]:
    """Gauss7/Kronrod15 pair on [a, b]; returns (K15 value, |K15 - G7|)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = complex(f(c))
    resk = _WGK_CENTER * fc
    resg = _WG_CENTER * fc
    for i in range(7):
        dx = h * _XGK[i]
        f1 = complex(f(c - dx))
        f2 = complex(f(c + dx))
        resk += _WGK[i] * (f1 + f2)
        if i % 2 == 1:
            resg += _WG[i // 2] * (f1 + f2)
    return resk * h, abs((resk - resg) * h)


def _adaptive_panels(
    f: Callable[[float], complex],
    breakpoints: Sequence[float],
    spec: QuadratureSpec,
) -> tuple[complex, float, int]:
    """Greedy refinement over the initial panels defined by `breakpoints`.

    Raises ToleranceNotMet when the bisection budget runs out above tolerance.
    Ties in the refinement queue resolve toward the leftmost panel so that
    panels near the origin are refined first.
    """
    heap = []
    total = 0j
    total_err = 0.0
    evals = 0
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        val, err = _gk15(f, a, b)
        evals += 15
        total += val
        total_err += err
        heapq.heappush(heap, (-err, a, b, val))

    subdivisions = 0
    while total_err > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if subdivisions >= spec.max_subdivisions:
            raise ToleranceNotMet(
                f"error estimate {total_err:.3e} above tolerance after "
                f"{subdivisions} subdivisions",
                value=total,
                error_estimate=total_err,
                evaluations=evals,
            )
        neg_err, a, b, val = heapq.heappop(heap)
        m = 0.5 * (a + b)
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        evals += 30
        total += (v1 + v2) - val
        total_err += (e1 + e2) - (-neg_err)
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
        subdivisions += 1
    return total, total_err, evals


def _breakpoints(lo: float, hi: float, width: float, geometric_at: float | None) -> list[float]:
    """Panel edges on [lo, hi]: uniform steps of `width`, optionally with a
    geometric cascade toward `geometric_at` (used to pre-refine omega = 0,
    where integrands often have removable singularities)."""
    pts = [lo]
    if geometric_at is not None and geometric_at == lo:
        for g in range(12, 0, -1):
            pts.append(lo + width * 2.0 ** (-g))
    start = lo + width
    while start < hi - 0.5 * width:
        pts.append(start)
        start += width
    pts.append(hi)
    return pts


def _panel_width(span: float, tau: float, osc_freq: float) -> float:
    """Initial panel width: a couple of cutoff decay lengths, further capped
    to a fraction of the dominant oscillation period when one is declared."""
    width = min(span, 2.0 / tau)
    if osc_freq > 0.0:
        width = min(width, math.pi / (4.0 * osc_freq))
    return width


def integrate_interval(
    f: Callable[[float], complex],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    osc_freq: float = 0.0,
) -> QuadratureResult:
    """Adaptive integral of f over the finite interval [a, b] (no weight)."""
    spec = spec or QuadratureSpec()
    if not (math.isfinite(a) and math.isfinite(b)) or b <= a:
        raise ValueError("need finite a < b")
    width = b - a
    if osc_freq > 0.0:
        width = min(width, math.pi / (4.0 * osc_freq))
    value, err, evals = _adaptive_panels(f, _breakpoints(a, b, width, None), spec)
    return QuadratureResult(value, err, evals)


def integrate_halfline(
    f: Callable[[float], complex],
    tau: float,
    spec: QuadratureSpec | None = None,
    osc_freq: float = 0.0,
) -> QuadratureResult:
    """Approximate integral of f(omega) * e^(-omega*tau) over [0, inf).

    The range is truncated at T = tail_truncation_multiple/tau; the dropped
    tail is bounded by M e^(-T tau)/tau with M sampled from |f| near T and
    added to the error estimate.  `osc_freq` declares the dominant oscillation
    frequency of f, if any, to cap the initial panel width.
    """
    spec = spec or QuadratureSpec()
    if not (tau > 0.0) or not math.isfinite(tau):
        raise InvalidCutoff(f"tau must be > 0, got {tau}")
    cut = spec.tail_truncation_multiple / tau
    width = _panel_width(cut, tau, osc_freq)

    def weighted(w: float) -> complex:
        return complex(f(w)) * math.exp(-w * tau)

    value, err, evals = _adaptive_panels(
        weighted, _breakpoints(0.0, cut, width, geometric_at=0.0), spec
    )
    m_tail = max(abs(complex(f(cut * r))) for r in (1.0, 0.97, 0.93, 0.88))
    tail = m_tail * math.exp(-spec.tail_truncation_multiple) / tau
    return QuadratureResult(value, err + tail, evals + 4)


def integrate_realline(
    f: Callable[[float], complex],
    tau: float,
    spec: QuadratureSpec | None = None,
    osc_freq: float = 0.0,
) -> QuadratureResult:
    """Approximate integral of f over (-inf, inf), truncated symmetrically.

    The caller embeds any cutoff weight in f itself; tau only sets the
    truncation point |k| = tail_truncation_multiple/tau and the tail bound,
    which assumes |f| keeps decaying at least like e^(-|k| tau) beyond it.
    """
    spec = spec or QuadratureSpec()
    if not (tau > 0.0) or not math.isfinite(tau):
        raise InvalidCutoff(f"tau must be > 0, got {tau}")
    cut = spec.tail_truncation_multiple / tau
    width = _panel_width(cut, tau, osc_freq)
    pts_neg = [-p for p in reversed(_breakpoints(0.0, cut, width, geometric_at=0.0))]
    pts = pts_neg[:-1] + _breakpoints(0.0, cut, width, geometric_at=0.0)
    value, err, evals = _adaptive_panels(lambda k: complex(f(k)), pts, spec)
    m_tail = max(abs(complex(f(s * cut * r))) for s in (1.0, -1.0) for r in (1.0, 0.97))
    tail = 2.0 * m_tail / tau
    return QuadratureResult(value, err + tail, evals + 4)


class LimitKind(Enum):
    FINITE = "finite"
    DIVERGENT = "divergent"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class LimitOutcome:
    """Result of a limit classification.

    `value` is meaningful only when kind is FINITE; `confidence` in [0, 1]
    reflects how consistently the extrapolation table contracted (or, for a
    divergent verdict, how cleanly a power law fit the growth).
    """

    kind: LimitKind
    value: complex = 0j
    confidence: float = 0.0


def _neville_diagonal(s: Sequence[float], v: Sequence[complex]) -> list[complex]:
    """Diagonal of the Neville table for polynomial extrapolation to s = 0."""
    n = len(s)
    row = list(v)
    diag = [row[0]]
    for m in range(1, n):
        new = []
        for i in range(n - m):
            num = s[i] * row[i + 1] - s[i + m] * row[i]
            new.append(num / (s[i] - s[i + m]))
        row = new
        diag.append(row[0])
    return diag


def _power_law_fit(s: Sequence[float], v: Sequence[complex]) -> tuple[float, float] | None:
    """Least-squares slope of log|v| against log s over the given samples,
    with the RMS residual of the fit; None if any |v| vanishes."""
    mags = [abs(z) for z in v]
    if any(m == 0.0 for m in mags):
        return None
    xs = [math.log(x) for x in s]
    ys = [math.log(m) for m in mags]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx == 0.0:
        return None
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    resid = math.sqrt(
        sum((y - (my + slope * (x - mx))) ** 2 for x, y in zip(xs, ys)) / n
    )
    return slope, resid


def classify_limit(samples: Sequence[tuple[float, complex]]) -> LimitOutcome:
    """Classify the s -> 0 limit of a sampled sequence.

    `samples` must be ordered with s strictly decreasing toward 0.  Divergence
    is detected first, as power-law growth of |value| over the last four
    samples (slope of log|v| vs log s below -0.5 with RMS residual < 0.1);
    otherwise Richardson-style polynomial extrapolation to s = 0 is applied
    and the outcome is finite if the table diagonal contracts.
    """
    if len(samples) < 4:
        raise TooFewSamples(f"need at least 4 samples, got {len(samples)}")
    s = [float(p[0]) for p in samples]
    v = [complex(p[1]) for p in samples]
    for x, y in zip(s[:-1], s[1:]):
        if not (x > y > 0.0):
            raise ValueError("samples must have strictly decreasing s > 0")

    scale = max(abs(z) for z in v)
    if scale == 0.0:
        return LimitOutcome(LimitKind.FINITE, 0j, 1.0)

    fit = _power_law_fit(s[-4:], v[-4:])
    if fit is not None:
        slope, resid = fit
        if slope < -0.5 and resid < 0.1 and abs(v[-1]) > abs(v[-4]):
            return LimitOutcome(
                LimitKind.DIVERGENT, 0j, max(0.0, min(1.0, 1.0 - resid / 0.1))
            )

    # Extrapolate over the full sample set and over trailing suffixes (early
    # samples may predate the asymptotic regime), and in each table take the
    # diagonal entry where it contracted the most; entries past that point are
    # typically dominated by rounding noise in the samples.
    best = None
    length = len(s)
    while length >= 4:
        diag = _neville_diagonal(s[-length:], v[-length:])
        gaps = [abs(b - a) for a, b in zip(diag[:-1], diag[1:])]
        i_best = min(range(len(gaps)), key=lambda i: gaps[i])
        contracted = gaps[i_best] <= 0.1 * max(gaps[0], 1e-300) or gaps[0] == 0.0
        cand = (gaps[i_best], diag[i_best + 1], contracted)
        if best is None or cand[0] < best[0]:
            best = cand
        length -= 2
    gap, value, contracted = best
    norm = max(scale, abs(value))
    rel_gap = gap / norm
    if rel_gap <= 1e-6 or (contracted and rel_gap <= 1e-2):
        confidence = max(0.0, min(1.0, 1.0 - 1e3 * rel_gap))
        return LimitOutcome(LimitKind.FINITE, value, confidence)
    return LimitOutcome(LimitKind.INDETERMINATE, 0j, max(0.0, min(0.2, 1.0 - rel_gap)))
