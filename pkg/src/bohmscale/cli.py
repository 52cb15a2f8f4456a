"""Command-line front end: ``bohmscale {analyze,compare,synth}``.

Configuration precedence is CLI flag > ``--config`` JSON file > built-in
default. The effective configuration is echoed into every report. On
failure a JSON object ``{"error": {...}}`` goes to stdout and the exit
code is 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .baseline import compare_with_white_noise
from .config import PipelineConfig
from .errors import BohmscaleError, ConfigError, InputFileError
from .market_data import FormatSpec, load_price_series, log_returns, write_price_series
from .report import (
    SCHEMA_VERSION,
    dump_report,
    input_record,
    scale_record,
    timestamp,
    tool_info,
    write_compare_grid,
    write_scale_grid,
    write_width_curve,
)
from .scaling import MIN_PIECEWISE_POINTS, compute_width_curve, fit_piecewise, fit_scaling
from .synth import SynthSpec, generate, to_price_series

OUT_DIR_ENV = "BOHMSCALE_OUT_DIR"
DEFAULT_OUT_DIR = "bohmscale-out"
_FORMAT_KEYS = ("date_column", "price_column", "date_format", "delimiter")


def _parse_taus(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--taus expects comma-separated integers, got {text!r}") from None


def _parse_bandwidth(text: str):
    if text in ("silverman", "curvature"):
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--bandwidth expects 'silverman', 'curvature' or a positive number") from None


def _parse_stride(text: str):
    if text == "tau":
        return "tau"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("--stride expects a positive integer or 'tau'") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with pipeline and input-format settings")
    common.add_argument("--taus", type=_parse_taus, help="comma-separated time scales, e.g. 1,2,4,8")
    common.add_argument("--estimator", choices=["kde", "histogram"])
    common.add_argument("--bandwidth", type=_parse_bandwidth, help="'silverman', 'curvature' or an absolute width")
    common.add_argument("--grid-points", type=int)
    common.add_argument("--wall-strategy", choices=["potential-peak", "support-edge"])
    common.add_argument("--peak-rule", choices=["dominant", "outermost"])
    common.add_argument("--p-floor-rel", type=float)
    common.add_argument("--negate-potential", action="store_true", default=None)
    common.add_argument("--stride", type=_parse_stride, help="1 (overlapping) or 'tau' (non-overlapping)")
    common.add_argument("--seed", type=int)
    common.add_argument("--out-dir", help=f"output directory (default ${OUT_DIR_ENV} or ./{DEFAULT_OUT_DIR})")
    common.add_argument("--emit-grids", action="store_true", help="write per-scale q,p,U,valid CSV grids")
    common.add_argument("--date-column")
    common.add_argument("--price-column")
    common.add_argument("--date-format", help="'auto', 'iso', 'dmy' or a strptime pattern")

    parser = argparse.ArgumentParser(prog="bohmscale", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="walls and width scaling across time scales")
    a.add_argument("--input", required=True)

    c = sub.add_parser("compare", parents=[common], help="market vs variance-matched white noise")
    c.add_argument("--input", required=True)
    c.add_argument("--tau", type=int, help="time scale to compare (default: smallest configured tau)")

    s = sub.add_parser("synth", parents=[common], help="write a synthetic price file")
    s.add_argument("--kind", choices=["white", "fgn", "student_t"], default="white")
    s.add_argument("--n", type=int, default=4096, help="number of returns")
    s.add_argument("--sigma", type=float, default=0.01)
    s.add_argument("--hurst", type=float, default=0.5)
    s.add_argument("--df", type=float, default=3.0)
    s.add_argument("--output", help="price file path (default <out-dir>/synthetic.csv)")
    return parser


def _load_config_file(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFileError(f"cannot read config {path}: {exc}", stage="config") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}", stage="config") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", stage="config")
    return data


def resolve_settings(args) -> tuple[PipelineConfig, FormatSpec]:
    data = _load_config_file(args.config) if args.config else {}
    fmt = {k: data.pop(k) for k in _FORMAT_KEYS if k in data}
    flags = {
        "taus": args.taus,
        "estimator": args.estimator,
        "bandwidth": args.bandwidth,
        "grid_points": args.grid_points,
        "wall_strategy": args.wall_strategy,
        "peak_rule": args.peak_rule,
        "p_floor_rel": args.p_floor_rel,
        "negate_potential": args.negate_potential,
        "stride": args.stride,
        "seed": args.seed,
    }
    data.update({k: v for k, v in flags.items() if v is not None})
    for key, flag in (("date_column", args.date_column), ("price_column", args.price_column), ("date_format", args.date_format)):
        if flag is not None:
            fmt[key] = flag
    try:
        cfg = PipelineConfig.from_dict(data)
        spec = FormatSpec(**fmt)
    except ConfigError as exc:
        exc.stage = "config"
        raise
    except TypeError as exc:
        raise ConfigError(str(exc), stage="config") from exc
    return cfg, spec


def _out_dir(args) -> Path:
    return Path(args.out_dir or os.environ.get(OUT_DIR_ENV) or DEFAULT_OUT_DIR)


def cmd_analyze(args) -> dict:
    cfg, spec = resolve_settings(args)
    out = _out_dir(args)
    series = load_price_series(args.input, spec)
    curve = compute_width_curve(series, config=cfg)
    fit = fit_scaling(curve)
    piecewise = fit_piecewise(curve, cfg.piecewise_delta) if len(curve) >= MIN_PIECEWISE_POINTS else None

    base_tau = curve.records[0].tau
    try:
        comparison = compare_with_white_noise(log_returns(series, base_tau, cfg.stride_for(base_tau)), cfg.seed, cfg)
    except BohmscaleError as exc:
        exc.stage, exc.tau = "baseline", base_tau
        raise

    scales = []
    for rec in curve.records:
        grid_path = None
        if args.emit_grids:
            grid_path = Path("grids") / f"tau_{rec.tau:05d}.csv"
            write_scale_grid(out / grid_path, rec)
        scales.append(scale_record(rec, grid_path))
    write_width_curve(out / "width_curve.csv", curve)

    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "analysis",
        "tool": tool_info(),
        "generated_at": timestamp(),
        "instrument_id": series.instrument_id,
        "input": input_record(args.input, series, spec),
        "config": cfg.to_dict(),
        "scales": scales,
        "omitted_scales": [{"tau": t, "error": e} for t, e in sorted(curve.failures.items())],
        "width_curve_path": "width_curve.csv",
        "scaling_fit": fit.to_dict(),
        "piecewise_fit": None if piecewise is None else piecewise.to_dict(),
        "baseline": comparison.summary,
    }
    dump_report(report, out / "report.json")
    return {"status": "ok", "report": str(out / "report.json"), "slope": fit.slope, "r_squared": fit.r_squared}


def cmd_compare(args) -> dict:
    cfg, spec = resolve_settings(args)
    out = _out_dir(args)
    series = load_price_series(args.input, spec)
    tau = args.tau if args.tau is not None else min(cfg.taus)
    comparison = compare_with_white_noise(log_returns(series, tau, cfg.stride_for(tau)), cfg.seed, cfg)
    grid_path = Path("compare_grid.csv")
    write_compare_grid(out / grid_path, comparison)
    report = {
        "schema_version": SCHEMA_VERSION,
        "kind": "compare",
        "tool": tool_info(),
        "generated_at": timestamp(),
        "instrument_id": series.instrument_id,
        "input": input_record(args.input, series, spec),
        "config": cfg.to_dict(),
        "comparison": comparison.summary,
        "grid_path": str(grid_path),
    }
    dump_report(report, out / "compare.json")
    return {"status": "ok", "report": str(out / "compare.json")}


def cmd_synth(args) -> dict:
    seed = args.seed if args.seed is not None else 0
    spec = SynthSpec(args.kind, args.n, args.sigma, args.hurst, args.df, seed)
    returns = generate(spec)
    path = Path(args.output) if args.output else _out_dir(args) / "synthetic.csv"
    write_price_series(to_price_series(returns, instrument_id=f"synthetic-{spec.kind}"), path)
    return {"status": "ok", "output": str(path), "spec": spec.to_dict(), "generator": returns.meta["generator"]}


COMMANDS = {"analyze": cmd_analyze, "compare": cmd_compare, "synth": cmd_synth}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except BohmscaleError as exc:
        print(json.dumps({"error": exc.to_dict()}))
        return 1
    except OSError as exc:
        print(json.dumps({"error": {"kind": "io", "message": str(exc), "stage": args.command, "tau": None}}))
        return 1
    print(json.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
