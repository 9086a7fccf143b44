"""Command-line surface: every computation as a subcommand, CSV/JSON output.

Configuration resolves as defaults <- config file (REGULAB_CONFIG or
--config) <- command-line flags, later wins.  Config files are flat
`key = value` lines with `#` comments and dotted section prefixes, e.g.
`quadrature.rel_tol = 1e-12`.  All output is deterministic: identical inputs
produce byte-identical files.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import selftest as selftest_mod
from .core import Regulator
from .errors import RegulabError, ToleranceNotMet
from .flanagan import ConformalMap, WeightFunction, delta_flanagan, delta_pointsplit, delta_tau, qi_bound_rhs
from .numerics import QuadratureSpec
from .regulator_lab import AmbiguityExpr, AmbiguityId, LimitPath, scan_path
from .static_well import WellConfig, t00r_static
from .time_step import StepConfig, d_term, mode_reg_density, pointsplit_density

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

_CONFIG_KEYS = {
    "quadrature.rel_tol": float,
    "quadrature.abs_tol": float,
    "quadrature.max_subdivisions": int,
    "quadrature.tail_truncation_multiple": float,
    "output.format": str,
    "output.path": str,
}


class ValidationFailure(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _parse_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValidationFailure(
                        f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
                    )
                key, _, val = line.partition("=")
                key = key.strip()
                val = val.strip()
                if key not in _CONFIG_KEYS:
                    raise ValidationFailure(f"{path}:{lineno}: unknown key {key!r}")
                try:
                    values[key] = _CONFIG_KEYS[key](val)
                except ValueError as exc:
                    raise ValidationFailure(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise ValidationFailure(f"--config: cannot read {path}: {exc}") from exc
    return values


def _resolve(args) -> dict:
    """defaults <- env config file <- --config file <- flags."""
    resolved = {
        "quadrature.rel_tol": 1e-10,
        "quadrature.abs_tol": 1e-14,
        "quadrature.max_subdivisions": 2000,
        "quadrature.tail_truncation_multiple": 60.0,
        "output.format": "csv",
        "output.path": "-",
        "deterministic": True,
    }
    env_path = os.environ.get("REGULAB_CONFIG")
    if env_path:
        resolved.update(_parse_config_file(env_path))
    if args.config:
        resolved.update(_parse_config_file(args.config))
    flag_map = {
        "rel_tol": "quadrature.rel_tol",
        "abs_tol": "quadrature.abs_tol",
        "max_subdivisions": "quadrature.max_subdivisions",
        "tail_multiple": "quadrature.tail_truncation_multiple",
        "format": "output.format",
        "out": "output.path",
    }
    for attr, key in flag_map.items():
        val = getattr(args, attr, None)
        if val is not None:
            resolved[key] = val
    if resolved["output.format"] not in ("csv", "json"):
        raise ValidationFailure(
            f"--format must be csv or json, got {resolved['output.format']!r}"
        )
    return resolved


def _spec_from(resolved: dict) -> QuadratureSpec:
    try:
        return QuadratureSpec(
            rel_tol=resolved["quadrature.rel_tol"],
            abs_tol=resolved["quadrature.abs_tol"],
            max_subdivisions=resolved["quadrature.max_subdivisions"],
            tail_truncation_multiple=resolved["quadrature.tail_truncation_multiple"],
        )
    except ValueError as exc:
        raise ValidationFailure(f"quadrature settings: {exc}") from exc


def _parse_grid(text: str, flag: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationFailure(f"{flag}: expected start:stop:count, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ValidationFailure(f"{flag}: {exc}") from exc
    if count < 1:
        raise ValidationFailure(f"{flag}: count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    return [start + i * step for i in range(count)]


def _parse_floats(text: str, flag: str, n_min=1) -> list[float]:
    try:
        vals = [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise ValidationFailure(f"{flag}: {exc}") from exc
    if len(vals) < n_min:
        raise ValidationFailure(f"{flag}: need at least {n_min} values")
    return vals


def _parse_path(text: str) -> LimitPath:
    vals = _parse_floats(text, "--path", 3)
    if len(vals) not in (3, 6):
        raise ValidationFailure("--path: expected p0,p1,ptau or p0,p1,ptau,c0,c1,ctau")
    try:
        return LimitPath(*vals)
    except ValueError as exc:
        raise ValidationFailure(f"--path: {exc}") from exc


def _regulator_from(args) -> Regulator:
    try:
        return Regulator(args.eps0, args.eps1, args.tau)
    except ValueError as exc:
        raise ValidationFailure(f"--eps0/--eps1/--tau: {exc}") from exc


def _emit(resolved: dict, columns: list[str], records: list[dict], summary: dict | None):
    buf = io.StringIO()
    config_items = [(k, resolved[k]) for k in sorted(resolved)]
    if resolved["output.format"] == "csv":
        for key, val in config_items:
            buf.write(f"# {key} = {_fmt(val)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt(rec[c]) for c in columns])
        if summary is not None:
            parts = ", ".join(f"{k} = {_fmt(v)}" for k, v in summary.items())
            buf.write(f"# summary: {parts}\n")
    else:
        doc = {"config": dict(config_items), "records": records}
        if summary is not None:
            doc["summary"] = summary
        json.dump(doc, buf, indent=2)
        buf.write("\n")
    text = buf.getvalue()
    path = resolved["output.path"]
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_well_energy(args, resolved: dict) -> int:
    try:
        cfg = WellConfig(args.lam, args.a)
    except ValueError as exc:
        raise ValidationFailure(f"--lambda/--a: {exc}") from exc
    spec = _spec_from(resolved)
    xs = _parse_grid(args.grid, "--grid")
    if args.path is not None:
        path = _parse_path(args.path)
        schedule = _parse_floats(args.s_schedule, "--s-schedule")
        regulators = [path.regulator_at(s) for s in schedule]
    else:
        regulators = [_regulator_from(args)]
    for x in xs:
        for reg in regulators:
            if abs(x) + reg.eps1 / 2.0 >= cfg.a:
                raise ValidationFailure(
                    f"--grid: x outside |x|<a (x = {_fmt(x)}, eps1 = {_fmt(reg.eps1)}, a = {_fmt(cfg.a)})"
                )
            if not (reg.tau > 0.0):
                raise ValidationFailure("--tau: need tau > 0 for the cutoff integral")
    records = []
    for x in xs:
        for reg in regulators:
            res = t00r_static(cfg, reg, x, 0.0, spec)
            records.append(
                {
                    "x": x,
                    "value": res.value,
                    "error_estimate": res.error_estimate,
                    "eps0": reg.eps0,
                    "eps1": reg.eps1,
                    "tau": reg.tau,
                }
            )
    _emit(resolved, ["x", "value", "error_estimate", "eps0", "eps1", "tau"], records, None)
    return EXIT_OK


def cmd_step_energy(args, resolved: dict) -> int:
    try:
        cfg = StepConfig(args.lam, args.mass)
    except ValueError as exc:
        raise ValidationFailure(f"--lambda/--mass: {exc}") from exc
    spec = _spec_from(resolved)
    ts = _parse_grid(args.grid, "--grid")
    if any(t < 0.0 for t in ts):
        raise ValidationFailure("--grid: t must be >= 0 (after the switch-on)")
    reg = _regulator_from(args)
    records = []
    for t in ts:
        mode = mode_reg_density(cfg, t, spec)
        rec = {"t": t, "mode_reg": mode.value}
        if args.compare:
            if not (reg.tau > 0.0):
                raise ValidationFailure("--tau: need tau > 0 for --compare")
            if t <= reg.eps0 / 2.0:
                raise ValidationFailure(
                    f"--grid: need t > eps0/2 for the point split (t = {_fmt(t)})"
                )
            ps = pointsplit_density(cfg, t, reg, spec)
            gap = d_term(cfg, reg)
            rec["pointsplit"] = ps.value
            rec["d_term"] = gap
            rec["residual"] = ps.value - gap - mode.value
        records.append(rec)
    columns = ["t", "mode_reg"] + (["pointsplit", "d_term", "residual"] if args.compare else [])
    _emit(resolved, columns, records, None)
    return EXIT_OK


def _build_expr(args) -> AmbiguityExpr:
    ids = {e.value: e for e in AmbiguityId}
    if args.expr not in ids:
        raise ValidationFailure(
            f"--expr: unknown expression id {args.expr!r}; choose from {sorted(ids)}"
        )
    which = ids[args.expr]
    if which is AmbiguityId.RATIO_239:
        return AmbiguityExpr.ratio239()
    if which is AmbiguityId.R_STATIC_317:
        return AmbiguityExpr.r_static317(args.lam, args.a)
    if which is AmbiguityId.D_TERM_616:
        return AmbiguityExpr.d_term616(args.lam)
    V = ConformalMap.from_text(args.V, "v")
    return AmbiguityExpr.flanagan_delta(V, args.v0)


def cmd_limit_scan(args, resolved: dict) -> int:
    expr = _build_expr(args)
    path = _parse_path(args.path)
    schedule = _parse_floats(args.s_schedule, "--s-schedule", n_min=4)
    result = scan_path(expr, path, schedule)
    records = [
        {"s": s, "value_re": z.real, "value_im": z.imag} for s, z in result.samples
    ]
    summary = {
        "kind": result.outcome.kind.value,
        "value_re": result.outcome.value.real,
        "value_im": result.outcome.value.imag,
        "confidence": result.outcome.confidence,
    }
    if result.singular_s is not None:
        summary["singular_s"] = result.singular_s
    _emit(resolved, ["s", "value_re", "value_im"], records, summary)
    return EXIT_OK


def cmd_flanagan(args, resolved: dict) -> int:
    V = ConformalMap.from_text(args.V, "v")
    vs = _parse_grid(args.grid, "--grid")
    mode = args.mode
    records = []
    if mode == "taylor":
        for v in vs:
            records.append({"v": v, "delta": delta_flanagan(V, v), "mode": mode})
        columns = ["v", "delta", "mode"]
    elif mode == "tau_first":
        if not (args.tau > 0.0):
            raise ValidationFailure("--tau: need tau > 0 for tau_first mode")
        for v in vs:
            records.append({"v": v, "delta": delta_tau(V, v, args.tau), "mode": mode})
        columns = ["v", "delta", "mode"]
    else:
        offset = args.vbar_offset
        for v in vs:
            z = delta_pointsplit(V, v, v - offset, args.tau)
            records.append(
                {
                    "v": v,
                    "delta_re": z.real,
                    "delta_im": z.imag,
                    "mode": mode,
                    "vbar": v - offset,
                    "tau": args.tau,
                }
            )
        columns = ["v", "delta_re", "delta_im", "mode", "vbar", "tau"]
    _emit(resolved, columns, records, None)
    return EXIT_OK


def cmd_qi_bound(args, resolved: dict) -> int:
    support = _parse_floats(args.support, "--support", 2)
    if len(support) != 2:
        raise ValidationFailure("--support: expected lo,hi")
    try:
        rho = WeightFunction.from_text(args.rho, (support[0], support[1]), "x")
    except ValueError as exc:
        raise ValidationFailure(f"--support: {exc}") from exc
    spec = _spec_from(resolved)
    res = qi_bound_rhs(rho, spec)
    _emit(
        resolved,
        ["bound", "error_estimate"],
        [{"bound": res.value, "error_estimate": res.error_estimate}],
        None,
    )
    return EXIT_OK


def cmd_selftest(args, resolved: dict) -> int:
    ok = selftest_mod.run_all(write=lambda line: sys.stdout.write(line + "\n"))
    return EXIT_OK if ok else 1


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"), default=None, help="output format")
    p.add_argument("--out", default=None, help="output path, '-' for stdout")
    p.add_argument("--config", default=None, help="config file (overrides REGULAB_CONFIG)")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    p.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    p.add_argument("--max-subdivisions", dest="max_subdivisions", type=int, default=None)
    p.add_argument("--tail-multiple", dest="tail_multiple", type=float, default=None)


def _add_regulator(p: argparse.ArgumentParser):
    p.add_argument("--eps0", type=float, default=0.0, help="time split")
    p.add_argument("--eps1", type=float, default=0.0, help="space split")
    p.add_argument("--tau", type=float, default=0.0, help="frequency cutoff scale")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regulab",
        description="Point-split and mode-sum vacuum energy densities, and the "
        "order-of-limits behavior of their regulators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("well-energy", help="density inside a static square well")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="barrier strength")
    p.add_argument("--a", type=float, required=True, help="well half-width")
    p.add_argument("--grid", required=True, help="x grid start:stop:count")
    _add_regulator(p)
    p.add_argument("--path", default=None, help="limit path p0,p1,ptau[,c0,c1,ctau]")
    p.add_argument("--s-schedule", dest="s_schedule", default=None, help="decreasing s values")
    _add_common(p)
    p.set_defaults(func=cmd_well_energy)

    p = sub.add_parser("step-energy", help="density after a sudden switch-on")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="step height")
    p.add_argument("--mass", type=float, required=True, help="field mass (> 0)")
    p.add_argument("--grid", required=True, help="t grid start:stop:count")
    _add_regulator(p)
    p.add_argument("--compare", action="store_true", help="also compute point-split and residual")
    _add_common(p)
    p.set_defaults(func=cmd_step_energy)

    p = sub.add_parser("limit-scan", help="classify a regulator expression along a path")
    p.add_argument("--expr", required=True, help="ratio239 | rstatic317 | dterm616 | flanagan-delta")
    p.add_argument("--path", required=True, help="limit path p0,p1,ptau[,c0,c1,ctau]")
    p.add_argument("--s-schedule", dest="s_schedule", required=True, help="decreasing s values (>= 4)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="strength for rstatic317/dterm616")
    p.add_argument("--a", type=float, default=1.0, help="half-width for rstatic317")
    p.add_argument("--V", default="exp(v)", help="map for flanagan-delta")
    p.add_argument("--v0", type=float, default=0.0, help="evaluation point for flanagan-delta")
    _add_common(p)
    p.set_defaults(func=cmd_limit_scan)

    p = sub.add_parser("flanagan", help="conformal-map density differences")
    p.add_argument("--V", required=True, help="map V(v)")
    p.add_argument("--grid", required=True, help="v grid start:stop:count")
    p.add_argument("--mode", choices=("taylor", "tau_first", "pointsplit"), default="taylor")
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--vbar-offset", dest="vbar_offset", type=float, default=0.01,
                   help="v - vbar in pointsplit mode")
    _add_common(p)
    p.set_defaults(func=cmd_flanagan)

    p = sub.add_parser("qi-bound", help="weighted-average energy lower bound")
    p.add_argument("--rho", required=True, help="strictly positive weight rho(x)")
    p.add_argument("--support", required=True, help="lo,hi quadrature support")
    _add_common(p)
    p.set_defaults(func=cmd_qi_bound)

    p = sub.add_parser("selftest", help="run oracle-vs-closed-form checks")
    _add_common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Turn ['--support', '-30,30'] into ['--support=-30,30'] so argparse does
    not mistake a leading-dash numeric value for an option."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if (
            a.startswith("--")
            and "=" not in a
            and len(nxt) > 1
            and nxt[0] == "-"
            and (nxt[1].isdigit() or nxt[1] == ".")
        ):
            out.append(a + "=" + nxt)
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        resolved = _resolve(args)
        return args.func(args, resolved)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ToleranceNotMet as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except RegulabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        # domain-object constructors validate with ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
