"""Command-line interface: fit, sample, curve, simulate, margins.

All commands are deterministic given their full flag set including the seed;
--seed falls back to the EBB_SEED environment variable. Reports go to stdout
unless --out is given, as JSON by default or CSV via --out-format.

Exit codes:
    0  success
    2  invalid arguments or parameter values
    3  input/output failure
    4  unparseable data file or config
    5  numerical failure (non-convergence or an undefined evaluation)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .distribution import EbbParams, cdf, pdf_grid
from .errors import (ConvergenceError, DataFormatError, DomainError,
                     EvaluationError)
from .estimation import (compare_models, estimate_rho_moment, fit_beta,
                         fit_ebb_full, fit_ebb_profile, fit_gamma_shape,
                         fit_kumaraswamy, lr_test, mean_cdf_survival)
from .montecarlo import McScenario, emit_histogram_data, run_scenario
from .sampling import RngSeed, sample_z
from .specfun import DEFAULT_SERIES, SeriesControl

__all__ = ["DatasetSpec", "RunConfig", "main"]

_EXIT_CODES_HELP = """exit codes:
  0  success
  2  invalid arguments or parameter values
  3  input/output failure
  4  unparseable data file or config
  5  numerical failure (non-convergence or an undefined evaluation)

environment:
  EBB_SEED  fallback seed when --seed is not given
"""


@dataclass(frozen=True)
class DatasetSpec:
    """Where and how to read a dataset.

    format is "z-column" (one unit-interval column) or "xy-columns" (two
    positive columns forming a ratio). columns holds names or zero-based
    indices; numerator says which of (x, y) is the ratio's numerator,
    defaulting to the second column. header is "auto", "yes", or "no".
    Rows with missing, non-numeric, or out-of-domain cells are dropped and
    counted.
    """

    path: str
    format: str = "z-column"
    columns: tuple = ()
    numerator: str = "second"
    delimiter: str = ","
    header: str = "auto"

    def __post_init__(self):
        if self.format not in ("z-column", "xy-columns"):
            raise DomainError(f"unknown dataset format {self.format!r}")
        if self.numerator not in ("first", "second"):
            raise DomainError("numerator must be 'first' or 'second'")
        if self.header not in ("auto", "yes", "no"):
            raise DomainError("header must be 'auto', 'yes', or 'no'")
        if len(self.delimiter) != 1:
            raise DomainError("delimiter must be a single character")
        want = 1 if self.format == "z-column" else 2
        cols = self.columns if self.columns else tuple(range(want))
        if len(cols) != want:
            raise DomainError(
                f"{self.format} needs exactly {want} column(s), "
                f"got {len(cols)}")
        object.__setattr__(self, "columns", tuple(cols))


@dataclass(frozen=True)
class RunConfig:
    """Output and numeric policy shared by the commands."""

    out: str | None = None
    out_format: str = "json"
    digits: int = 6
    series: SeriesControl | None = None

    def __post_init__(self):
        if self.out_format not in ("json", "csv"):
            raise DomainError("out-format must be 'json' or 'csv'")
        if isinstance(self.digits, bool) or not isinstance(self.digits, int) \
                or not 1 <= self.digits <= 17:
            raise DomainError("digits must be an integer in 1..17")


# ---------------------------------------------------------------------------
# ingestion
# ---------------------------------------------------------------------------

def _read_table(spec: DatasetSpec):
    """Rows and resolved column indices, honoring the header policy."""
    with open(spec.path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh, delimiter=spec.delimiter)
                if any(c.strip() for c in r)]
    if not rows:
        raise DataFormatError(f"{spec.path}: no data rows")
    named = [c for c in spec.columns if isinstance(c, str)]
    header = spec.header
    if header == "auto":
        if named:
            header = "yes"
        else:
            probe = rows[0]
            try:
                for c in spec.columns:
                    float(probe[c])
                header = "no"
            except (ValueError, IndexError):
                header = "yes"
    if header == "yes":
        head, data = rows[0], rows[1:]
        idx = []
        for c in spec.columns:
            if isinstance(c, str):
                if c not in head:
                    raise DataFormatError(
                        f"column {c!r} not found in header {head!r}")
                idx.append(head.index(c))
            else:
                idx.append(c)
    else:
        if named:
            raise DataFormatError(
                "column names need a header row (use --header yes)")
        idx, data = list(spec.columns), rows
    if not data:
        raise DataFormatError(f"{spec.path}: no data rows below the header")
    return data, idx


def _cell(row, i):
    try:
        v = float(row[i])
    except (ValueError, IndexError):
        return None
    return v if math.isfinite(v) else None


def ingest_z(spec: DatasetSpec):
    """Unit-interval sample from a z-column dataset: (values, n_dropped)."""
    data, idx = _read_table(spec)
    i = idx[0]
    vals = []
    dropped = 0
    for row in data:
        v = _cell(row, i)
        if v is None or not 0.0 < v < 1.0:
            dropped += 1
            continue
        vals.append(v)
    if len(vals) < 3:
        raise DataFormatError(
            f"{spec.path}: only {len(vals)} usable rows "
            f"({dropped} dropped)")
    return np.asarray(vals), dropped


def ingest_xy(spec: DatasetSpec):
    """Paired positive sample from an xy dataset: (x, y, n_dropped)."""
    data, idx = _read_table(spec)
    ix, iy = idx
    xs, ys = [], []
    dropped = 0
    for row in data:
        x = _cell(row, ix)
        y = _cell(row, iy)
        if x is None or y is None or x <= 0.0 or y <= 0.0:
            dropped += 1
            continue
        xs.append(x)
        ys.append(y)
    if len(xs) < 3:
        raise DataFormatError(
            f"{spec.path}: only {len(xs)} usable rows ({dropped} dropped)")
    return np.asarray(xs), np.asarray(ys), dropped


def _ratio(x, y, numerator):
    num = y if numerator == "second" else x
    return num / (x + y)


# ---------------------------------------------------------------------------
# emission helpers
# ---------------------------------------------------------------------------

def _sig(v, digits):
    """Round to significant digits; non-finite becomes None for reports."""
    if v is None or not math.isfinite(v):
        return None
    return float(f"{v:.{digits}g}")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _csv_text(write_rows):
    buf = io.StringIO()
    write_rows(csv.writer(buf, lineterminator="\n"))
    return buf.getvalue()


def _fit_report_entry(r, dropped, digits):
    names = ("alpha", "beta", "rho")[:len(r.params)]
    return {
        "model": r.model_name,
        "params": {k: _sig(v, digits) for k, v in zip(names, r.params)},
        "loglik": _sig(r.loglik, digits),
        "aic": _sig(r.aic, digits),
        "bic": _sig(r.bic, digits),
        "converged": bool(r.converged),
        "n_dropped": dropped,
    }


def _descriptives(z):
    q1, med, q3 = (float(v) for v in np.percentile(z, [25.0, 50.0, 75.0]))
    m = float(z.mean())
    c = z - m
    m2 = float(np.mean(c ** 2))
    skew = float(np.mean(c ** 3)) / m2 ** 1.5 if m2 > 0 else 0.0
    kurt = float(np.mean(c ** 4)) / m2 ** 2 if m2 > 0 else 0.0
    return {
        "n": int(z.size), "min": float(z.min()), "q1": q1, "median": med,
        "mean": m, "q3": q3, "max": float(z.max()),
        "sd": float(z.std(ddof=1)), "skewness": skew, "kurtosis": kurt,
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

_MODEL_ORDER = ("beta", "kumaraswamy", "ebb")


def _series_from_args(args) -> SeriesControl | None:
    rel_tol = getattr(args, "rel_tol", None)
    max_terms = getattr(args, "max_terms", None)
    if rel_tol is None and max_terms is None:
        return None
    return SeriesControl(
        rel_tol=rel_tol if rel_tol is not None else DEFAULT_SERIES.rel_tol,
        max_terms=max_terms if max_terms is not None
        else DEFAULT_SERIES.max_terms)


def _run_config(args) -> RunConfig:
    return RunConfig(out=getattr(args, "out", None),
                     out_format=getattr(args, "out_format", "json"),
                     digits=getattr(args, "digits", 6),
                     series=_series_from_args(args))


def _resolve_seed(value):
    if value is not None:
        return int(value)
    env = os.environ.get("EBB_SEED")
    if env is None:
        raise DomainError(
            "no seed: pass --seed or set EBB_SEED for reproducible output")
    try:
        return int(env)
    except ValueError:
        raise DomainError(f"EBB_SEED must be an integer, got {env!r}") from None


def _dataset_from_args(args, fmt=None) -> DatasetSpec:
    if fmt is None:
        fmt = "xy-columns" if args.format in ("xy", "xy-columns") else "z-column"
    cols = ()
    if args.columns:
        parts = [p.strip() for p in args.columns.split(",") if p.strip()]
        cols = tuple(int(p) if p.lstrip("+-").isdigit() else p for p in parts)
    return DatasetSpec(path=args.data, format=fmt, columns=cols,
                       numerator=args.numerator, delimiter=args.delimiter,
                       header=args.header)


def cmd_fit(args) -> int:
    spec = _dataset_from_args(args)
    if spec.format == "xy-columns":
        x, y, dropped = ingest_xy(spec)
        z = _ratio(x, y, spec.numerator)
    else:
        z, dropped = ingest_z(spec)
    models = tuple(m.strip() for m in args.model.split(",") if m.strip())
    bad = set(models) - set(_MODEL_ORDER)
    if bad or not models:
        raise DomainError(
            f"--model must be a subset of {','.join(_MODEL_ORDER)}")
    cfg = _run_config(args)
    ctl = cfg.series
    failed = False
    if set(models) == set(_MODEL_ORDER):
        results = compare_models(z, ctl, ebb_fit=args.ebb_fit)
        failed = any(not r.converged for r in results)
    else:
        fitters = {
            "beta": lambda: fit_beta(z),
            "kumaraswamy": lambda: fit_kumaraswamy(z),
            "ebb": lambda: (fit_ebb_full if args.ebb_fit == "full"
                            else fit_ebb_profile)(z, ctl),
        }
        results = []
        for name in _MODEL_ORDER:
            if name not in models:
                continue
            try:
                results.append(fitters[name]())
            except (ConvergenceError, EvaluationError) as e:
                print(f"ebbdist: {name} fit failed: {e}", file=sys.stderr)
                failed = True
        results.sort(key=lambda r: (r.aic, r.model_name))
    lr = None
    if {"beta", "ebb"} <= set(models):
        try:
            lr = lr_test(z, ctl)
        except (ConvergenceError, EvaluationError) as e:
            print(f"ebbdist: LR test failed: {e}", file=sys.stderr)
            failed = True
    d = cfg.digits
    if cfg.out_format == "json":
        report = {
            "n": int(z.size),
            "n_dropped": dropped,
            "descriptives": {k: (_sig(v, d) if isinstance(v, float) else v)
                             for k, v in _descriptives(z).items()},
            "fits": [_fit_report_entry(r, dropped, d) for r in results],
        }
        if lr is not None:
            report["lr_test"] = {"statistic": _sig(lr.statistic, d),
                                 "df": lr.df,
                                 "p_value": _sig(lr.p_value, d)}
        _emit(json.dumps(report, indent=2) + "\n", cfg.out)
    else:
        def rows(w):
            w.writerow(["model", "alpha", "beta", "rho", "loglik", "aic",
                        "bic", "converged", "n", "n_dropped"])
            for r in results:
                pr = list(r.params) + [None] * (3 - len(r.params))
                w.writerow([r.model_name,
                            _sig(pr[0], d), _sig(pr[1], d), _sig(pr[2], d),
                            _sig(r.loglik, d), _sig(r.aic, d),
                            _sig(r.bic, d), r.converged, r.n, dropped])
            w.writerow([])
            w.writerow(["stat", "value"])
            for k, v in _descriptives(z).items():
                w.writerow([k, _sig(v, d) if isinstance(v, float) else v])
            if lr is not None:
                w.writerow(["lr_statistic", _sig(lr.statistic, d)])
                w.writerow(["lr_df", lr.df])
                w.writerow(["lr_p_value", _sig(lr.p_value, d)])
        _emit(_csv_text(rows), cfg.out)
    return 5 if failed else 0


def cmd_sample(args) -> int:
    p = EbbParams(args.alpha, args.beta, args.rho)
    if args.n < 1:
        raise DomainError(f"--n must be positive, got {args.n}")
    seed = RngSeed(_resolve_seed(args.seed), args.stream)
    cfg = _run_config(args)
    z = sample_z(p, args.n, seed)
    text = "".join(f"{v:.17g}\n" for v in z)
    _emit(text, cfg.out)
    return 0


def cmd_curve(args) -> int:
    p = EbbParams(args.alpha, args.beta, args.rho)
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    cfg = _run_config(args)
    ctl = cfg.series
    if args.kind == "pdf":
        grid = pdf_grid(p, args.points, ctl)
    else:
        z = np.arange(1, args.points + 1) / (args.points + 1.0)
        grid = np.column_stack((z, cdf(p, z, ctl)))
    d = cfg.digits
    if cfg.out_format == "json":
        payload = {
            "alpha": p.alpha, "beta": p.beta, "rho": p.rho,
            "kind": args.kind,
            "points": [[_sig(zv, d), _sig(fv, d)] for zv, fv in grid],
        }
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        def rows(w):
            w.writerow(["z", args.kind])
            for zv, fv in grid:
                w.writerow([_sig(zv, d), _sig(fv, d)])
        _emit(_csv_text(rows), cfg.out)
    return 0


def _scenarios_from_config(path, default_seed=None):
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list) or not raw:
        raise DataFormatError(
            "config must be a nonempty JSON list of scenario objects")
    scenarios = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise DataFormatError(f"scenario {i} is not an object")
        try:
            params = EbbParams(item["alpha"], item["beta"], item["rho"])
            sizes = tuple(item["sample_sizes"])
            replications = item["replications"]
            seed = _resolve_seed(item.get("seed", default_seed))
            scenarios.append(McScenario(
                params=params,
                sample_sizes=sizes,
                replications=replications,
                master_seed=RngSeed(seed, item.get("stream", 0)),
                estimator=item.get("estimator", "ml"),
                workers=item.get("workers", 1)))
        except KeyError as e:
            raise DataFormatError(
                f"scenario {i} is missing required key {e.args[0]!r}") from None
        except (TypeError, DomainError) as e:
            raise DataFormatError(f"scenario {i} is invalid: {e}") from None
    return scenarios


def _scenario_from_flags(args):
    sizes = tuple(int(s) for s in args.n.split(",") if s.strip())
    params = EbbParams(args.alpha, args.beta, args.rho)
    return McScenario(params=params, sample_sizes=sizes,
                      replications=args.replications,
                      master_seed=RngSeed(_resolve_seed(args.seed),
                                          args.stream),
                      estimator=args.estimator, workers=args.workers)


_SUMMARY_COLS = (
    "scenario", "estimator", "alpha", "beta", "rho", "n", "replications",
    "failures",
    "bias_alpha", "bias_beta", "bias_rho",
    "bias_kind_alpha", "bias_kind_beta", "bias_kind_rho",
    "rmse_alpha", "rmse_beta", "rmse_rho",
    "root_rmse_alpha", "root_rmse_beta", "root_rmse_rho",
)


def cmd_simulate(args) -> int:
    if args.config is not None and args.alpha is not None:
        raise DomainError("give either --config or inline scenario flags, "
                          "not both")
    if args.config is not None:
        scenarios = _scenarios_from_config(args.config, args.seed)
    else:
        if args.alpha is None or args.beta is None or args.rho is None \
                or args.n is None:
            raise DomainError("inline scenarios need --alpha, --beta, "
                              "--rho, and --n")
        scenarios = [_scenario_from_flags(args)]
    cfg = _run_config(args)
    d = cfg.digits
    summary_rows = []
    failed = False
    for i, s in enumerate(scenarios):
        try:
            per_n = run_scenario(s)
        except (ConvergenceError, EvaluationError, DomainError) as e:
            print(f"ebbdist: scenario {i} failed: {e}", file=sys.stderr)
            failed = True
            continue
        for n, summ in sorted(per_n.items()):
            row = {
                "scenario": i, "estimator": s.estimator,
                "alpha": s.params.alpha, "beta": s.params.beta,
                "rho": s.params.rho, "n": n,
                "replications": summ.replications,
                "failures": summ.failure_count,
            }
            for k, label in enumerate(summ.labels):
                row[f"bias_{label}"] = _sig(summ.bias[k], d)
                row[f"bias_kind_{label}"] = summ.bias_kind[k]
                row[f"rmse_{label}"] = _sig(summ.rmse[k], d)
                row[f"root_rmse_{label}"] = _sig(summ.root_rmse[k], d)
            summary_rows.append(row)
            if cfg.out is not None:
                hists = emit_histogram_data(summ, args.bins)
                for label, (edges, counts) in hists.items():
                    path = f"{cfg.out}_hist_s{i}_n{n}_{label}.csv"

                    def rows(w, edges=edges, counts=counts):
                        w.writerow(["bin_left", "bin_right", "count"])
                        for lo, hi, cnt in zip(edges[:-1], edges[1:], counts):
                            w.writerow([_sig(float(lo), d),
                                        _sig(float(hi), d), int(cnt)])
                    _emit(_csv_text(rows), path)
    if cfg.out_format == "json":
        text = json.dumps(summary_rows, indent=2) + "\n"
        suffix = "_summary.json"
    else:
        def rows(w):
            w.writerow(_SUMMARY_COLS)
            for row in summary_rows:
                w.writerow([row[c] for c in _SUMMARY_COLS])
        text = _csv_text(rows)
        suffix = "_summary.csv"
    _emit(text, None if cfg.out is None else cfg.out + suffix)
    return 5 if failed else 0


def cmd_margins(args) -> int:
    spec = _dataset_from_args(args, fmt="xy-columns")
    x, y, dropped = ingest_xy(spec)
    shape_x = fit_gamma_shape(x)
    shape_y = fit_gamma_shape(y)
    est = estimate_rho_moment(x, y, shape_x, shape_y)
    report = {
        "n": int(x.size),
        "n_dropped": dropped,
        "shape_x": shape_x,
        "shape_y": shape_y,
        "beta_x": mean_cdf_survival(shape_x),
        "beta_y": mean_cdf_survival(shape_y),
        "corr": float(np.corrcoef(x, y)[0, 1]),
        "rho_moment": est.value,
        "clipped": est.clipped,
    }
    cfg = _run_config(args)
    d = cfg.digits
    if cfg.out_format == "json":
        out = {k: (_sig(v, d) if isinstance(v, float) else v)
               for k, v in report.items()}
        _emit(json.dumps(out, indent=2) + "\n", cfg.out)
    else:
        def rows(w):
            w.writerow(["stat", "value"])
            for k, v in report.items():
                w.writerow([k, _sig(v, d) if isinstance(v, float) else v])
        _emit(_csv_text(rows), cfg.out)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_output_flags(p, default_format="json"):
    p.add_argument("--out", default=None,
                   help="output path (default: stdout); simulate treats this "
                        "as a filename prefix")
    p.add_argument("--out-format", choices=("json", "csv"),
                   default=default_format,
                   help=f"report format (default {default_format})")
    p.add_argument("--digits", type=int, default=6,
                   help="significant digits in reports (default 6)")


def _add_series_flags(p):
    p.add_argument("--rel-tol", type=float, default=None,
                   help="series relative tolerance (default 1e-12)")
    p.add_argument("--max-terms", type=int, default=None,
                   help="series term cap (default 20000)")


def _add_dataset_flags(p, with_format=True):
    p.add_argument("--data", required=True, help="CSV dataset path")
    if with_format:
        p.add_argument("--format", default="z-column",
                       choices=("z-column", "xy-columns", "z", "xy"),
                       help="z-column: one unit-interval column; xy-columns: "
                            "two positive columns forming a ratio (short "
                            "forms z / xy; default z-column)")
    p.add_argument("--columns", default=None,
                   help="column names or zero-based indices, comma-separated "
                        "(defaults: first column for z, first two for xy)")
    p.add_argument("--numerator", choices=("first", "second"),
                   default="second",
                   help="which xy column is the ratio numerator "
                        "(default second)")
    p.add_argument("--delimiter", default=",", help="field delimiter")
    p.add_argument("--header", choices=("auto", "yes", "no"), default="auto",
                   help="whether the first row is a header (default auto)")


def _add_params_flags(p, required=True):
    p.add_argument("--alpha", type=float, required=required,
                   default=None, help="first shape parameter")
    p.add_argument("--beta", type=float, required=required,
                   default=None, help="second shape parameter")
    p.add_argument("--rho", type=float, required=required,
                   default=None, help="dependence parameter in [-1, 1]")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ebbdist",
        description="Fit, sample, and study the extended bimodal beta "
                    "distribution.",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "fit", help="fit models to unit-interval data and compare them",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_dataset_flags(p)
    p.add_argument("--model", default="beta,kumaraswamy,ebb",
                   help="comma-separated subset of beta,kumaraswamy,ebb")
    p.add_argument("--ebb-fit", choices=("full", "profile"), default="full",
                   help="EBB fitting strategy: full three-parameter ML or "
                        "the two-stage profile (default full)")
    _add_series_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser(
        "sample", help="draw reproducible samples to a file or stdout",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_params_flags(p)
    p.add_argument("--n", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=None,
                   help="seed (fallback: EBB_SEED)")
    p.add_argument("--stream", type=int, default=0,
                   help="stream id under the seed (default 0)")
    p.add_argument("--out", default=None,
                   help="output path (default stdout), one value per line")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser(
        "curve", help="emit a density or CDF curve on an interior grid",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_params_flags(p)
    p.add_argument("--kind", choices=("pdf", "cdf"), default="pdf",
                   help="which curve to emit (default pdf)")
    p.add_argument("--points", type=int, default=201,
                   help="number of interior grid points (default 201)")
    _add_series_flags(p)
    _add_output_flags(p, default_format="csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser(
        "simulate", help="run seeded Monte Carlo estimator studies",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", default=None,
                   help="JSON file: list of scenario objects with keys "
                        "alpha, beta, rho, sample_sizes, replications, and "
                        "optional seed, stream, estimator, workers")
    _add_params_flags(p, required=False)
    p.add_argument("--n", default=None,
                   help="comma-separated sample sizes for an inline scenario")
    p.add_argument("--replications", type=int, default=200,
                   help="replicates per sample size (default 200)")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (fallback: EBB_SEED)")
    p.add_argument("--stream", type=int, default=0,
                   help="base stream id (default 0)")
    p.add_argument("--estimator", choices=("ml", "profile"), default="ml",
                   help="fit applied per replicate (default ml)")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel worker processes (default 1)")
    p.add_argument("--bins", type=int, default=30,
                   help="histogram bins per parameter (default 30)")
    _add_output_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "margins", help="gamma margin fits and the moment dependence "
                        "estimate for paired data",
        epilog=_EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_dataset_flags(p, with_format=False)
    _add_output_flags(p)
    p.set_defaults(func=cmd_margins)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as e:
        print(f"ebbdist: error: {e}", file=sys.stderr)
        print(f"run 'ebbdist {args.command} --help' for usage",
              file=sys.stderr)
        return 2
    except OSError as e:
        print(f"ebbdist: i/o error: {e}", file=sys.stderr)
        return 3
    except (DataFormatError, json.JSONDecodeError) as e:
        print(f"ebbdist: parse error: {e}", file=sys.stderr)
        return 4
    except (ConvergenceError, EvaluationError) as e:
        print(f"ebbdist: numerical failure: {e}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
