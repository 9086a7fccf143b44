"""Limit paths for (eps0, eps1, tau) -> 0 and classification of the
regulator-dependent expressions along them.

A LimitPath drives each regulator component to zero as a power of a single
parameter s; the exponent ordering is what decides the limit of the
degree-zero-homogeneous ambiguity expressions.  A coefficient of zero pins a
component identically to zero along the whole path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .core import Regulator
from .errors import SingularRegulator
from .flanagan import ConformalMap, delta_pointsplit
from .numerics import LimitKind, LimitOutcome, classify_limit
from .static_well import WellConfig, r_integral_closed
from .time_step import d_term_value

__all__ = [
    "LimitPath",
    "AmbiguityId",
    "AmbiguityExpr",
    "ScanResult",
    "sigma1",
    "ratio_239",
    "scan_path",
]


@dataclass(frozen=True)
class LimitPath:
    """eps0(s) = c0*s^p0, eps1(s) = c1*s^p1, tau(s) = ctau*s^ptau for s in (0, 1]."""

    p0: float
    p1: float
    ptau: float
    c0: float = 1.0
    c1: float = 1.0
    ctau: float = 1.0

    def __post_init__(self):
        for name in ("p0", "p1", "ptau", "c0", "c1", "ctau"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {v}")
        if self.c0 == 0.0 and self.c1 == 0.0 and self.ctau == 0.0:
            raise ValueError("at least one coefficient must be positive")

    def regulator_at(self, s: float) -> Regulator:
        if not (0.0 < s <= 1.0):
            raise ValueError(f"s must be in (0, 1], got {s}")
        return Regulator(
            self.c0 * s**self.p0, self.c1 * s**self.p1, self.ctau * s**self.ptau
        )


def sigma1(reg: Regulator) -> complex:
    """Regulated squared separation of the split points:
    (eps1^2 - eps0^2) + 2i*eps0*tau + tau^2."""
    return complex(
        reg.eps1 * reg.eps1 - reg.eps0 * reg.eps0 + reg.tau * reg.tau,
        2.0 * reg.eps0 * reg.tau,
    )


def ratio_239(reg: Regulator) -> complex:
    """eps1^2 / sigma1 — the prototype order-of-limits ambiguity: 1, 0, or
    unbounded depending on which regulator component shrinks fastest."""
    s1 = sigma1(reg)
    if s1 == 0:
        raise SingularRegulator(f"sigma1 vanishes at {reg}")
    return reg.eps1 * reg.eps1 / s1


class AmbiguityId(Enum):
    RATIO_239 = "ratio239"
    R_STATIC_317 = "rstatic317"
    D_TERM_616 = "dterm616"
    FLANAGAN_DELTA = "flanagan-delta"


@dataclass(frozen=True)
class AmbiguityExpr:
    """A named pure evaluator Regulator -> complex."""

    id: AmbiguityId
    evaluate: Callable[[Regulator], complex] = field(compare=False)
    detail: str = ""

    @classmethod
    def ratio239(cls) -> "AmbiguityExpr":
        return cls(AmbiguityId.RATIO_239, ratio_239, "eps1^2/sigma1")

    @classmethod
    def r_static317(cls, lam: float = 1.0, a: float = 1.0) -> "AmbiguityExpr":
        cfg = WellConfig(lam, a)
        return cls(
            AmbiguityId.R_STATIC_317,
            lambda reg: complex(r_integral_closed(cfg, reg)),
            f"static-well remainder integral, lam={lam}",
        )

    @classmethod
    def d_term616(cls, lam: float = 1.0) -> "AmbiguityExpr":
        return cls(
            AmbiguityId.D_TERM_616,
            lambda reg: complex(d_term_value(lam, reg.eps0, reg.eps1, reg.tau)),
            f"mode-vs-pointsplit gap, lam={lam}",
        )

    @classmethod
    def flanagan_delta(cls, V: ConformalMap, v: float) -> "AmbiguityExpr":
        """Density-difference split in the null coordinate: eps1 is the
        separation v - vbar and tau the cutoff (eps0 is unused)."""
        return cls(
            AmbiguityId.FLANAGAN_DELTA,
            lambda reg: delta_pointsplit(V, v, v - reg.eps1, reg.tau),
            f"conformal-map delta at v={v}",
        )


@dataclass(frozen=True)
class ScanResult:
    """Classification plus the raw (s, value) samples behind it."""

    outcome: LimitOutcome
    samples: tuple[tuple[float, complex], ...]
    singular_s: float | None = None


def scan_path(
    expr: AmbiguityExpr, path: LimitPath, s_values: Sequence[float]
) -> ScanResult:
    """Evaluate `expr` along `path` at the given decreasing s schedule and
    classify the s -> 0 trend.  An on-path singularity is itself a verdict:
    the scan reports Divergent with zero confidence rather than skipping."""
    samples: list[tuple[float, complex]] = []
    for s in s_values:
        try:
            samples.append((float(s), complex(expr.evaluate(path.regulator_at(s)))))
        except SingularRegulator:
            return ScanResult(
                LimitOutcome(LimitKind.DIVERGENT, 0j, 0.0), tuple(samples), float(s)
            )
    return ScanResult(classify_limit(samples), tuple(samples), None)
