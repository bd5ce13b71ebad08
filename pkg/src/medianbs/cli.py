"""Command-line interface.

Subcommands: price, curve, density, growth, mc, empirical.  Every
subcommand takes --format {human,csv,json}; human output rounds to 6
significant digits, csv/json to 12 so files round-trip.  In csv/json mode
stdout carries data only; diagnostics go to stderr.  Exit codes: 0 ok,
2 bad input, 3 numeric/tail failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .errors import (
    DomainError, InsufficientExceedancesError, QuadratureError,
    SupportTooLargeError, TailUnderflowError, ValidationError,
)
from .growth import (
    GrowthModel, enumerate_distribution, expected_size, growth_stats,
    median_size, prob_exceeds,
)
from .lognormal import MarketParams
from .montecarlo import McConfig, empirical_price, read_sample_file, validate
from .pricing import bs_price, density_report, median_price, price_curve

# Figure presets: sweep ranges and per-series fixed parameters.  The spot
# entries of the fig2b params are placeholders; that axis is swept.
PRESETS = {
    "fig2a": {
        "axis": "sigma_sqrt_tau", "sweep": "tau", "lo": 0.01, "hi": 5.0, "n": 200,
        "series": [
            ("K=0.2", MarketParams(spot=1.5, strike=0.2, rate=0.0, vol=1.0, tau=1.0)),
            ("K=0.7", MarketParams(spot=1.5, strike=0.7, rate=0.0, vol=1.0, tau=1.0)),
        ],
    },
    "fig2b": {
        "axis": "spot", "sweep": "tau", "lo": 0.02, "hi": 3.0, "n": 200,
        "series": [
            ("tau=0.2", MarketParams(spot=1.0, strike=1.0, rate=0.2, vol=1.0, tau=0.2)),
            ("tau=2", MarketParams(spot=1.0, strike=1.0, rate=0.2, vol=1.0, tau=2.0)),
        ],
    },
}


def _f12(x) -> str:
    return "" if x is None else f"{x:.12g}"


def _f6(x) -> str:
    return "" if x is None else f"{x:.6g}"


def _jsonable(obj):
    """Floats rounded to 12 significant digits; non-finite ones as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _emit(fmt: str, command: str, results, csv_table, human_lines) -> None:
    if fmt == "json":
        doc = {"command": command, "results": _jsonable(results)}
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        header, rows = csv_table
        writer.writerow(header)
        writer.writerows(rows)
    else:
        for line in human_lines:
            sys.stdout.write(line + "\n")


def _quote_dict(q) -> dict:
    return {
        "method": q.method, "value": q.value, "d1": q.d1, "d2": q.d2,
        "exercise_prob": float(q.exercise_prob), "discount": q.discount,
        "conditional_median": q.conditional_median,
    }


def _params_from(args) -> MarketParams:
    return MarketParams(spot=args.spot, strike=args.strike, rate=args.rate,
                        vol=args.vol, tau=args.tau)


def _params_dict(p: MarketParams) -> dict:
    return {"spot": p.spot, "strike": p.strike, "rate": p.rate,
            "vol": p.vol, "tau": p.tau}


def cmd_price(args) -> int:
    params = _params_from(args)
    quotes = []
    if args.method in ("mean", "both"):
        quotes.append(bs_price(params))
    if args.method in ("median", "both"):
        quotes.append(median_price(params))
    results = {"params": _params_dict(params),
               "quotes": [_quote_dict(q) for q in quotes]}
    header = ["method", "value", "d1", "d2", "exercise_prob", "discount",
              "conditional_median"]
    rows = [[q.method, _f12(q.value), _f12(q.d1), _f12(q.d2),
             _f12(float(q.exercise_prob)), _f12(q.discount),
             _f12(q.conditional_median)] for q in quotes]
    human = [f"spot {_f6(params.spot)}  strike {_f6(params.strike)}  "
             f"rate {_f6(params.rate)}  vol {_f6(params.vol)}  tau {_f6(params.tau)}"]
    for q in quotes:
        extra = (f", conditional median {_f6(q.conditional_median)}"
                 if q.conditional_median is not None else "")
        human.append(
            f"{q.method:>6} price {_f6(q.value)}   "
            f"(d1 {_f6(q.d1)}, d2 {_f6(q.d2)}, "
            f"P[exercise] {_f6(float(q.exercise_prob))}{extra})")
    _emit(args.format, "price", results, (header, rows), human)
    return 0


def cmd_curve(args) -> int:
    if args.preset:
        spec = PRESETS[args.preset]
        axis, sweep = spec["axis"], spec["sweep"]
        lo = args.lo if args.lo is not None else spec["lo"]
        hi = args.hi if args.hi is not None else spec["hi"]
        n = args.n if args.n is not None else spec["n"]
        series = spec["series"]
    else:
        missing = [f"--{name}" for name in ("axis", "lo", "hi", "n", "spot",
                                            "strike", "vol")
                   if getattr(args, name) is None]
        if missing:
            raise ValidationError("curve requires " + ", ".join(missing),
                                  fields=tuple(missing))
        axis = {"sst": "sigma_sqrt_tau", "spot": "spot"}[args.axis]
        sweep = args.sweep
        lo, hi, n = args.lo, args.hi, args.n
        params = MarketParams(spot=args.spot, strike=args.strike,
                              rate=args.rate, vol=args.vol, tau=args.tau)
        series = [("", params)]

    out_series = []
    for label, params in series:
        curve = price_curve(params, axis, lo, hi, n, sweep=sweep)
        out_series.append((label, params, curve))

    results = {"axis": axis, "sweep": sweep,
               "series": [{"label": label, "params": _params_dict(p),
                           "points": [[x, m, md] for x, m, md in c.points]}
                          for label, p, c in out_series]}
    if len(out_series) == 1:
        header = ["x", "mean", "median"]
        rows = [[_f12(x), _f12(m), _f12(md)]
                for x, m, md in out_series[0][2].points]
    else:
        header = ["series", "x", "mean", "median"]
        rows = [[label, _f12(x), _f12(m), _f12(md)]
                for label, _, c in out_series for x, m, md in c.points]
    human = [f"axis {axis} ({sweep} sweep), {n} points on [{_f6(lo)}, {_f6(hi)}]"]
    for label, _, c in out_series:
        name = label or "series"
        human.append(f"{name}: mean {_f6(c.mean[0])} .. {_f6(c.mean[-1])}, "
                     f"median {_f6(c.median[0])} .. {_f6(c.median[-1])}")
    human.append("use --format csv for the full grid")
    _emit(args.format, "curve", results, (header, rows), human)
    return 0


def cmd_density(args) -> int:
    params = _params_from(args)
    report = density_report(params, grid_n=args.n)
    results = {"params": _params_dict(params),
               "x": [float(v) for v in report.x],
               "pdf": [float(v) for v in report.pdf],
               "marker_mean": report.marker_mean,
               "marker_median": report.marker_median,
               "area_left": report.area_left,
               "area_right": report.area_right}
    header = ["field", "x", "value"]
    rows = [["pdf", _f12(float(x)), _f12(float(y))]
            for x, y in zip(report.x, report.pdf)]
    rows.append(["marker_mean", _f12(report.marker_mean), ""])
    rows.append(["marker_median", _f12(report.marker_median), ""])
    rows.append(["area_left", "", _f12(report.area_left)])
    rows.append(["area_right", "", _f12(report.area_right)])
    human = [
        f"terminal density on [{_f6(float(report.x[0]))}, {_f6(float(report.x[-1]))}] "
        f"({len(report.x)} points)",
        f"marker_mean {_f6(report.marker_mean)}  marker_median {_f6(report.marker_median)}",
        f"area_left {_f6(report.area_left)}  area_right {_f6(report.area_right)}",
        "use --format csv for the full grid",
    ]
    _emit(args.format, "density", results, (header, rows), human)
    return 0


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad numeric list {text!r}") from exc


def cmd_growth(args) -> int:
    model = GrowthModel(rates=tuple(args.rates), probs=tuple(args.probs),
                        initial=args.s0, horizon=args.t)
    stats = growth_stats(model)
    threshold = args.threshold if args.threshold is not None else args.s0
    normal = float(prob_exceeds(model, threshold, method="normal"))
    try:
        exact = float(prob_exceeds(model, threshold, method="exact"))
        n_outcomes = len(enumerate_distribution(model))
    except SupportTooLargeError as exc:
        print(f"exact enumeration skipped: {exc}", file=sys.stderr)
        exact = None
        n_outcomes = None
    results = {
        "model": {"rates": list(model.rates), "probs": list(model.probs),
                  "initial": model.initial, "horizon": model.horizon},
        "mu_l": stats.mu_l, "mu_log": stats.mu_log,
        "geo_mean": stats.geo_mean, "sd_log": stats.sd_log,
        "expected_size": expected_size(model), "median_size": median_size(model),
        "threshold": threshold,
        "prob_exceeds_exact": exact,
        "prob_exceeds_normal_approx": normal,
        "outcomes": n_outcomes,
    }
    header = ["field", "value"]
    rows = [[k, _f12(results[k])]
            for k in ("mu_l", "mu_log", "geo_mean", "sd_log", "expected_size",
                      "median_size", "threshold", "prob_exceeds_exact",
                      "prob_exceeds_normal_approx")]
    human = [
        f"rates {_f6(model.rates[0])}" + "".join(f", {_f6(r)}" for r in model.rates[1:])
        + f"  probs {_f6(model.probs[0])}"
        + "".join(f", {_f6(p)}" for p in model.probs[1:])
        + f"  t {model.horizon}  S0 {_f6(model.initial)}",
        f"mu_l {_f6(stats.mu_l)}  mu_log {_f6(stats.mu_log)}  "
        f"geo_mean {_f6(stats.geo_mean)}  sd_log {_f6(stats.sd_log)}",
        f"expected size {_f6(results['expected_size'])}  "
        f"median size {_f6(results['median_size'])}",
        f"P[S_t > {_f6(threshold)}]  exact: "
        + (_f6(exact) if exact is not None else "unavailable")
        + f"  normal-approx: {_f6(normal)}",
    ]
    _emit(args.format, "growth", results, (header, rows), human)
    return 0


def _estimate_dict(est) -> dict:
    return {"value": est.value, "std_error": est.std_error,
            "paths_used": est.paths_used,
            "ci_low": est.ci_low, "ci_high": est.ci_high}


def cmd_mc(args) -> int:
    params = _params_from(args)
    mc = McConfig(paths=args.paths, seed=args.seed, chunk=args.chunk)
    report = validate(params, mc, workers=args.workers)
    results = {
        "params": _params_dict(params),
        "config": {"paths": mc.paths, "seed": mc.seed, "chunk": mc.chunk},
        "analytic_mean": report.analytic_mean,
        "analytic_median": report.analytic_median,
        "empirical_mean": _estimate_dict(report.empirical_mean),
        "empirical_median": _estimate_dict(report.empirical_median),
        "z_mean": report.z_mean, "mean_ok": report.mean_ok,
        "median_ok": report.median_ok,
        "prob_above_mean_analytic": report.prob_above_mean_analytic,
        "prob_above_mean_empirical": report.prob_above_mean_empirical,
        "z_prob_above_mean": report.z_prob_above_mean,
        "prob_ok": report.prob_ok,
        "passed": report.passed,
    }
    header = ["field", "value"]
    rows = [[k, _f12(results[k])]
            for k in ("analytic_mean", "analytic_median", "z_mean",
                      "prob_above_mean_analytic", "prob_above_mean_empirical",
                      "z_prob_above_mean")]
    rows += [["empirical_mean", _f12(report.empirical_mean.value)],
             ["empirical_mean_se", _f12(report.empirical_mean.std_error)],
             ["empirical_median", _f12(report.empirical_median.value)],
             ["empirical_median_ci_low", _f12(report.empirical_median.ci_low)],
             ["empirical_median_ci_high", _f12(report.empirical_median.ci_high)],
             ["mean_ok", str(report.mean_ok).lower()],
             ["median_ok", str(report.median_ok).lower()],
             ["prob_ok", str(report.prob_ok).lower()],
             ["passed", str(report.passed).lower()]]
    human = [
        f"{mc.paths} paths, seed {mc.seed}, chunk {mc.chunk}",
        f"mean   analytic {_f6(report.analytic_mean)}  "
        f"empirical {_f6(report.empirical_mean.value)} "
        f"+- {_f6(report.empirical_mean.std_error)}  z {_f6(report.z_mean)}  "
        f"{'ok' if report.mean_ok else 'FAIL'}",
        f"median analytic {_f6(report.analytic_median)}  "
        f"empirical {_f6(report.empirical_median.value)} in "
        f"[{_f6(report.empirical_median.ci_low)}, {_f6(report.empirical_median.ci_high)}]  "
        f"{'ok' if report.median_ok else 'FAIL'}",
        f"P[S_T > mean] analytic {_f6(report.prob_above_mean_analytic)}  "
        f"empirical {_f6(report.prob_above_mean_empirical)}  "
        f"z {_f6(report.z_prob_above_mean)}  {'ok' if report.prob_ok else 'FAIL'}",
        "passed" if report.passed else "FAILED",
    ]
    _emit(args.format, "mc", results, (header, rows), human)
    return 0


def cmd_empirical(args) -> int:
    sample = read_sample_file(args.file)
    methods = ["mean", "median"] if args.method == "both" else [args.method]
    estimates = {}
    for method in methods:
        estimates[method] = empirical_price(
            sample, args.strike, args.rate, args.tau, method=method,
            ci=args.ci, seed=args.seed)
    results = {"file": args.file, "n_samples": int(len(sample)),
               "strike": args.strike, "rate": args.rate, "tau": args.tau,
               "estimates": {m: _estimate_dict(e) for m, e in estimates.items()}}
    header = ["method", "value", "std_error", "paths_used", "ci_low", "ci_high"]
    rows = [[m, _f12(e.value), _f12(e.std_error), str(e.paths_used),
             _f12(e.ci_low), _f12(e.ci_high)] for m, e in estimates.items()]
    human = [f"{len(sample)} samples from {args.file}"]
    for m, e in estimates.items():
        human.append(f"{m:>6} price {_f6(e.value)} +- {_f6(e.std_error)}  "
                     f"CI [{_f6(e.ci_low)}, {_f6(e.ci_high)}]  "
                     f"({e.paths_used} paths used)")
    _emit(args.format, "empirical", results, (header, rows), human)
    return 0


def _add_market_flags(sub, tau_required: bool = True) -> None:
    sub.add_argument("--spot", type=float, required=True)
    sub.add_argument("--strike", type=float, required=True)
    sub.add_argument("--rate", type=float, required=True)
    sub.add_argument("--vol", type=float, required=True)
    sub.add_argument("--tau", type=float, required=tau_required)


def build_parser() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=("human", "csv", "json"),
                        default="human")
    parser = argparse.ArgumentParser(
        prog="medianbs",
        description="Mean- and median-based European call pricing")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("price", parents=[parent],
                        help="price one call by both formulas")
    _add_market_flags(p)
    p.add_argument("--method", choices=("mean", "median", "both"), default="both")
    p.set_defaults(handler=cmd_price)

    p = subs.add_parser("curve", parents=[parent],
                        help="mean/median price curves along one axis")
    p.add_argument("--preset", choices=tuple(PRESETS))
    p.add_argument("--axis", choices=("sst", "spot"))
    p.add_argument("--sweep", choices=("tau", "sigma"), default="tau")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--spot", type=float)
    p.add_argument("--strike", type=float)
    p.add_argument("--rate", type=float, default=0.0)
    p.add_argument("--vol", type=float)
    p.add_argument("--tau", type=float, default=1.0)
    p.set_defaults(handler=cmd_curve)

    p = subs.add_parser("density", parents=[parent],
                        help="terminal density grid with price markers")
    _add_market_flags(p)
    p.add_argument("--n", type=int, default=512)
    p.set_defaults(handler=cmd_density)

    p = subs.add_parser("growth", parents=[parent],
                        help="multiplicative growth: mean vs. median size")
    p.add_argument("--rates", type=_float_list, required=True)
    p.add_argument("--probs", type=_float_list, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--s0", type=float, default=1.0)
    p.add_argument("--threshold", type=float)
    p.set_defaults(handler=cmd_growth)

    p = subs.add_parser("mc", parents=[parent],
                        help="Monte Carlo validation of both formulas")
    _add_market_flags(p)
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunk", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_mc)

    p = subs.add_parser("empirical", parents=[parent],
                        help="price from a terminal-price sample file")
    p.add_argument("--file", required=True)
    p.add_argument("--strike", type=float, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--method", choices=("mean", "median", "both"), default="both")
    p.add_argument("--ci", choices=("order", "bootstrap"), default="order")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_empirical)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TailUnderflowError, QuadratureError, SupportTooLargeError,
            InsufficientExceedancesError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
