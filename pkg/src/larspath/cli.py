"""Command-line entry point: ``larspath <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import io
from .design import destandardize, standardize
from .errors import LarsError
from .experiments import (MultSweepConfig, TurlachConfig, marginality_check,
                          mult_sweep, quadratic_design, turlach_experiment)
from .path import cumulative_arc_length
from .resample import bootstrap_se, cp_prediction_shift
from .select import cp_curve, estimate_sigma2, fit_path, kfold_cv
from .svg import render_path_svg

PRESETS = ("two", "four", "bic", "lm")


@dataclass
class RunConfig:
    input_path: str
    response_column: str
    method: str = "lar"
    stop: str = "none"
    mult: str = "2"
    sigma2: float | None = None
    folds: int = 10
    seed: int = 0
    out: str | None = None
    report: str | None = None
    output_format: str = "json"
    plot_path: str | None = None
    plot_standardized: bool = False
    standardize: bool = True
    max_steps: int | None = None


def _mult_value(text):
    if text in PRESETS:
        return text
    return float(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _emit(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        io.atomic_write(path, text)


def _report_path(cfg: RunConfig):
    if cfg.report:
        return cfg.report
    if cfg.out:
        p = Path(cfg.out)
        return str(p.with_name(p.stem + ".selection." + cfg.output_format))
    return None


def _cp_report_text(report, fmt):
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step_index", "rss", "df", "mult", "cp", "selected"])
        for r in report.rows:
            w.writerow([r.step_index, repr(r.rss), repr(r.df), repr(r.mult), repr(r.cp),
                        int(r.step_index == report.selected)])
        return buf.getvalue()
    return _dumps({
        "rule": "cp",
        "mult": report.mult if isinstance(report.mult, (str, float)) else list(report.mult),
        "sigma2": report.sigma2,
        "n": report.n,
        "selected": report.selected,
        "rows": [{"step_index": r.step_index, "rss": r.rss, "df": r.df,
                  "mult": r.mult, "cp": r.cp} for r in report.rows],
    })


def _cv_report_text(report, fmt):
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["fraction", "mean_error", "se_error", "selected"])
        for g, me, se in zip(report.grid, report.mean_error, report.se_error):
            w.writerow([repr(g), repr(float(me)), repr(float(se)),
                        int(g == report.selected_fraction)])
        return buf.getvalue()
    return _dumps({
        "rule": "cv",
        "folds": report.folds,
        "seed": report.seed,
        "method": report.method,
        "selected_fraction": report.selected_fraction,
        "grid": list(report.grid),
        "mean_error": [float(v) for v in report.mean_error],
        "se_error": [float(v) for v in report.se_error],
    })


def run(cfg: RunConfig) -> int:
    """Fit a path, apply the stopping rule and write the requested artifacts."""
    x, y, names = io.ingest_csv(cfg.input_path, cfg.response_column)
    design = standardize(x, y, "standard" if cfg.standardize else "raw")
    path = fit_path(design, cfg.method.upper(), cfg.max_steps)
    if cfg.output_format == "csv":
        knots_text = io.knots_to_csv(path, design, names)
    else:
        knots_text = io.knots_to_json(path, design, names)

    selected_arc = None
    report_text = None
    cum = cumulative_arc_length(path)
    if cfg.stop == "cp":
        sigma2 = cfg.sigma2 if cfg.sigma2 is not None else estimate_sigma2(design)
        report = cp_curve(path, design, sigma2, _mult_value(cfg.mult))
        report_text = _cp_report_text(report, cfg.output_format)
        selected_arc = cum[report.selected]
    elif cfg.stop == "cv":
        report = kfold_cv(design, cfg.method.upper(), cfg.folds, seed=cfg.seed)
        report_text = _cv_report_text(report, cfg.output_format)
        selected_arc = report.selected_fraction * cum[-1]
    elif cfg.stop != "none":
        raise ValueError(f"unknown stopping rule {cfg.stop!r}")

    _emit(cfg.out, knots_text)
    if report_text is not None:
        _emit(_report_path(cfg), report_text)
    if cfg.plot_path:
        betas = path.betas
        if not (cfg.plot_standardized or design.raw_mode):
            betas = betas / design.column_scales
        steps = np.abs(np.diff(betas, axis=0)).sum(axis=1)
        plot_cum = np.concatenate([[0.0], np.cumsum(steps)])
        marker = None if selected_arc is None else float(np.interp(selected_arc, cum, plot_cum))
        svg = render_path_svg(betas, names, selected_arc=marker,
                              title=f"{path.method} coefficient path")
        io.atomic_write(cfg.plot_path, svg)
    return 0


def _bootstrap(args) -> int:
    x, y, names = io.ingest_csv(args.input, args.response)
    col = names.index(args.column) if args.column in names else int(args.column)
    stat = cp_prediction_shift(col, args.shift_sd, quadratic=not args.linear,
                               mult=_mult_value(args.mult), method=args.method.upper())
    rep = bootstrap_se(x, y, stat, args.b_reps, args.seed)
    _emit(args.out, _dumps({
        "statistic": f"cp-selected prediction shift, {names[col]} +{args.shift_sd} sd",
        "quadratic": not args.linear,
        "b_reps": rep.b_reps,
        "n_failed": rep.n_failed,
        "seed": rep.seed,
        "point_estimate": rep.point_estimate,
        "se": rep.se,
        "statistic_values": [float(v) for v in rep.statistic_values],
    }))
    return 0


def _config_from(cls, text, overrides):
    raw = io.parse_config(text)
    known = {f.name for f in fields(cls)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    for key in ("true_beta", "mult_list"):
        if key in raw and not isinstance(raw[key], tuple):
            raw[key] = (raw[key],)
    return cls(**raw)


def _experiment(args) -> int:
    text = Path(args.config).read_text(encoding="utf-8") if args.config else ""
    overrides = {"reps": args.reps, "seed": args.seed}
    out = Path(args.out)
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.study == "mult-sweep":
        cfg = _config_from(MultSweepConfig, text, overrides)
        res = mult_sweep(cfg)
        w.writerow(["replicate"] + [f"size_mult_{m!r}" for m in res.mult_values]
                   + [f"sqerr_mult_{m!r}" for m in res.mult_values])
        for r in range(res.reps):
            w.writerow([r] + [repr(float(v)) for v in res.selected_sizes[r]]
                       + [repr(float(v)) for v in res.sq_errors[r]])
        summary = {"study": "mult-sweep", "config": asdict(cfg),
                   "mult_values": list(res.mult_values),
                   "avg_selected_size": [float(v) for v in res.avg_selected_size],
                   "avg_sq_error": [float(v) for v in res.avg_sq_error]}
    else:
        cfg = _config_from(TurlachConfig, text, overrides)
        results = turlach_experiment(cfg)
        w.writerow(["replicate", "support", "noise_scale", "cv_selected_l1",
                    "truth_recovered", "strict_recovered", "interaction_ratio", "active"])
        for res in results:
            w.writerow([res.replicate, res.support, repr(res.noise_scale),
                        repr(res.cv_selected_l1), int(res.truth_recovered),
                        int(res.strict_recovered), repr(res.interaction_ratio),
                        " ".join(map(str, res.active_at_selection))])
        summary = {"study": "turlach", "config": asdict(cfg),
                   "recovery_rate": float(np.mean([r.truth_recovered for r in results])),
                   "strict_recovery_rate": float(np.mean([r.strict_recovered
                                                          for r in results]))}
    summary["config"] = {k: list(v) if isinstance(v, tuple) else v
                         for k, v in summary["config"].items()}
    io.atomic_write(out.with_suffix(".csv"), buf.getvalue())
    io.atomic_write(out.with_suffix(".summary.json"), _dumps(summary))
    return 0


def _audit(args) -> int:
    x, y, names = io.ingest_csv(args.input, args.response)
    expanded, mapping, enames, _ = quadratic_design(x, names, args.squares,
                                                    center=not args.no_center)
    design = standardize(expanded, y)
    path = fit_path(design, args.method.upper())
    if args.stop == "cp":
        sigma2 = args.sigma2 if args.sigma2 is not None else estimate_sigma2(design)
        knot = path.knots[cp_curve(path, design, sigma2, _mult_value(args.mult)).selected]
    else:
        knot = path.terminal
    _, coef = destandardize(design, knot.beta)
    audit = marginality_check(coef, mapping)
    _emit(args.out, _dumps({
        "centered_main_effects": not args.no_center,
        "step_index": knot.step_index,
        "satisfied": audit.satisfied,
        "violations": [{"interaction": f"{names[i]}:{names[j]}" if i != j else f"{names[i]}^2",
                        "abs_interaction": v, "min_abs_parent": b}
                       for i, j, v, b in audit.violations],
        "coefficients": dict(zip(enames, (float(c) for c in coef))),
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="larspath",
                                     description="LAR / Lasso / Forward Stagewise paths")
    sub = parser.add_subparsers(dest="command", required=True)

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", required=True, help="headed numeric CSV")
    data.add_argument("--response", required=True, help="response column name or index")
    data.add_argument("--method", choices=["lar", "lasso", "fs"], default="lar")
    data.add_argument("--mult", default="2", help="float or one of two|four|bic|lm")
    data.add_argument("--sigma2", type=float)
    data.add_argument("--seed", type=int, default=0)
    data.add_argument("--out")

    fit = argparse.ArgumentParser(add_help=False)
    fit.add_argument("--folds", type=int, default=10)
    fit.add_argument("--plot")
    fit.add_argument("--plot-standardized", action="store_true")
    fit.add_argument("--no-standardize", action="store_true")
    fit.add_argument("--max-steps", type=int)
    fit.add_argument("--format", choices=["json", "csv"], default="json")
    fit.add_argument("--report", help="selection report path")

    p = sub.add_parser("path", parents=[data, fit], help="fit and write path knots")
    p.add_argument("--stop", choices=["none", "cp", "cv"], default="none")
    p = sub.add_parser("select", parents=[data, fit], help="path plus stopping rule")
    p.add_argument("--stop", choices=["cp", "cv"], default="cp")

    p = sub.add_parser("bootstrap", parents=[data],
                       help="bootstrap SE of a Cp-selected prediction shift")
    p.add_argument("--column", required=True, help="covariate to shift")
    p.add_argument("--shift-sd", type=float, default=1.0)
    p.add_argument("--b-reps", type=int, default=500)
    p.add_argument("--linear", action="store_true", help="main effects only")

    p = sub.add_parser("experiment", help="run a simulation study")
    p.add_argument("study", choices=["mult-sweep", "turlach"])
    p.add_argument("--config")
    p.add_argument("--out", required=True, help="output prefix (.csv, .summary.json)")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("audit-marginality", parents=[data],
                       help="check |b_ij| <= min(|b_i|, |b_j|) on a quadratic fit")
    p.add_argument("--stop", choices=["none", "cp"], default="cp")
    p.add_argument("--squares", action="store_true")
    p.add_argument("--no-center", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("path", "select"):
            return run(RunConfig(
                input_path=args.input, response_column=args.response,
                method=args.method, stop=args.stop, mult=args.mult, sigma2=args.sigma2,
                folds=args.folds, seed=args.seed, out=args.out, report=args.report,
                output_format=args.format, plot_path=args.plot,
                plot_standardized=args.plot_standardized,
                standardize=not args.no_standardize, max_steps=args.max_steps))
        if args.command == "bootstrap":
            return _bootstrap(args)
        if args.command == "experiment":
            return _experiment(args)
        return _audit(args)
    except (LarsError, ValueError, OSError, IndexError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
