"""Signed-network balance and risk indicators for asset panels.

Exit codes: 0 success, 1 usage or validation error, 2 a reference check
failed, 3 numerical failure.
"""

import argparse
import configparser
import io
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from ._io import atomic_write_json, atomic_write_text
from .exceptions import NumericalError, SignBalanceError, ValidationError
from .fixtures import toy_checks, worked_checks
from .pipeline.bins import BIN_PRESETS, align_kappa_returns, conditional_bins, parse_bins
from .pipeline.data import load_price_panel, load_return_panel, log_returns
from .pipeline.events import detect_events
from .pipeline.experiments import appendix_experiment, bessel_constants, catalan, spectral_sums
from .pipeline.rolling import WindowSpec, rolling_indicators
from .risk import IndicatorConfig

EXIT_OK, EXIT_VALIDATION, EXIT_CHECK, EXIT_NUMERICAL = 0, 1, 2, 3

DEFAULTS = {
    "input": None,
    "kind": "prices",
    "window": 400,
    "step": 30,
    "threshold": 0.25,
    "amri": "1:3",
    "crf": "1",
    "tau": "-0.01,-0.005",
    "event_window": 20,
    "event_mode": "sliding",
    "bins": "equal5;paper5",
    "seed": 0,
    "out": ".",
    "sizes": "5,10,20,50",
    "reps": 100,
    "spectral_n": 500,
    "n_jobs": 1,
}

BESSEL_BANDS = (0.05, 0.10)
CATALAN_BAND = 0.05
PEARSON_MIN_50 = 0.98
PEARSON_BAND_5 = (0.6, 0.95)
BALANCED_KAPPA = 1.0 - 1e-9


# settings -------------------------------------------------------------------

def _int(name, v, lo=None):
    try:
        x = int(str(v).strip())
    except ValueError:
        raise ValidationError(f"--{name.replace('_', '-')} expects an integer, got {v!r}") from None
    if lo is not None and x < lo:
        raise ValidationError(f"--{name.replace('_', '-')} must be >= {lo}, got {x}")
    return x


def _float(name, v):
    try:
        x = float(str(v).strip())
    except ValueError:
        raise ValidationError(f"--{name.replace('_', '-')} expects a number, got {v!r}") from None
    if not math.isfinite(x):
        raise ValidationError(f"--{name.replace('_', '-')} must be finite, got {v!r}")
    return x


def _list(v, conv):
    return [conv(s) for s in str(v).split(",") if s.strip()]


def parse_amri(v):
    """``"H:p,H:p"`` -> ``[(H, p), ...]``."""
    out = []
    for item in str(v).split(","):
        if not item.strip():
            continue
        h, sep, p = item.partition(":")
        if not sep:
            raise ValidationError(f"--amri expects H:p pairs, got {item!r}")
        out.append((_int("amri", h, 1), _int("amri", p, 1)))
    return out


def read_config(path):
    """Key-value config file; keys match the long flag names."""
    text = Path(path).read_text(encoding="utf-8")
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text if text.lstrip().startswith("[") else "[run]\n" + text)
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse config {path}: {exc}") from None
    out = {}
    for section in cp.sections():
        for k, v in cp.items(section):
            key = k.strip().replace("-", "_")
            if key not in DEFAULTS:
                raise ValidationError(f"unknown config key {k!r} in {path}")
            out[key] = v.strip()
    return out


def resolve_settings(args):
    """Defaults, then the config file, then explicit flags."""
    s = dict(DEFAULTS)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    if getattr(args, "config", None):
        s.update(read_config(args.config))
    s.update(flags)
    s["window"] = _int("window", s["window"], 2)
    s["step"] = _int("step", s["step"], 1)
    s["threshold"] = _float("threshold", s["threshold"])
    if not 0.0 < s["threshold"] < 1.0:
        raise ValidationError(f"--threshold must lie in (0, 1), got {s['threshold']}")
    s["amri"] = parse_amri(s["amri"])
    s["crf"] = _list(s["crf"], lambda x: _int("crf", x, 1))
    s["tau"] = _list(s["tau"], lambda x: _float("tau", x))
    if not s["tau"]:
        raise ValidationError("--tau needs at least one value")
    s["event_window"] = _int("event_window", s["event_window"], 1)
    if s["event_mode"] not in ("sliding", "daily"):
        raise ValidationError(f"--event-mode must be sliding or daily, got {s['event_mode']!r}")
    bins = s["bins"] if isinstance(s["bins"], list) else str(s["bins"]).split(";")
    s["bins"] = [(b.strip(), parse_bins(b.strip())) for b in bins if b.strip()]
    s["seed"] = _int("seed", s["seed"], 0)
    s["sizes"] = _list(s["sizes"], lambda x: _int("sizes", x, 2))
    s["reps"] = _int("reps", s["reps"], 30)
    s["spectral_n"] = _int("spectral_n", s["spectral_n"], 2)
    s["n_jobs"] = _int("n_jobs", s["n_jobs"], 1)
    if s["kind"] not in ("prices", "returns"):
        raise ValidationError(f"--kind must be prices or returns, got {s['kind']!r}")
    s["out"] = Path(s["out"])
    s["indicators"] = IndicatorConfig(s["amri"], s["crf"])
    return s


def load_panel(s):
    if not s["input"]:
        raise ValidationError("--input is required")
    path = Path(s["input"])
    if not path.is_file():
        raise ValidationError(f"input file not found: {path}")
    if s["kind"] == "prices":
        return log_returns(load_price_panel(path))
    return load_return_panel(path)


def _series(s, panel):
    if s["window"] > panel.t:
        raise ValidationError(f"window width {s['window']} exceeds the series length T={panel.t}")
    s["indicators"].validate(panel.n)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        series = rolling_indicators(panel, WindowSpec(s["window"], s["step"]), s["indicators"],
                                    s["threshold"], n_jobs=s["n_jobs"])
    for w in {str(w.message) for w in caught}:
        print(f"warning: {w}", file=sys.stderr)
    for i, end, msg in series.failures:
        print(f"warning: window {i} ending {end} failed: {msg}", file=sys.stderr)
    return series


# commands --------------------------------------------------------------------

def cmd_analyze(s):
    panel = load_panel(s)
    series = _series(s, panel)
    buf = io.StringIO()
    series.to_csv(buf)
    atomic_write_text(s["out"] / "series.csv", buf.getvalue())
    atomic_write_text(s["out"] / "series.json", series.to_json() + "\n")
    kappa = series.column("kappa_weighted")
    finite = kappa[np.isfinite(kappa)]
    print(f"windows: {len(series)}")
    print(f"balanced windows: {int(np.sum(finite >= BALANCED_KAPPA))}")
    if finite.size:
        print(f"kappa min: {finite.min():.6f}  max: {finite.max():.6f}")
    print(f"failed windows: {len(series.failures)}")
    return EXIT_OK


def cmd_events(s):
    panel = load_panel(s)
    rows = []
    print(f"{'tau':>10}  {'start':>10}  {'end':>10}  {'min mean':>12}")
    for tau in s["tau"]:
        events = detect_events(panel, tau, s["event_window"], s["event_mode"])
        for e in events:
            print(f"{tau:>10g}  {e.start_date!s:>10}  {e.end_date!s:>10}  {e.min_mean_return:>12.6f}")
        rows.extend(events.to_list())
    atomic_write_json(s["out"] / "events.json", rows)
    print(f"events: {len(rows)}")
    return EXIT_OK


def cmd_bins(s):
    panel = load_panel(s)
    series = _series(s, panel)
    stops = series.window_starts + s["window"]
    out = {
        "window": s["window"],
        "step": s["step"],
        "event_window": s["event_window"],
        "presets": {name: list(edges) for name, edges in s["bins"]},
        "results": {},
    }
    for kind in ("weighted", "binary"):
        kap, ret = align_kappa_returns(series.column(f"kappa_{kind}"), stops, panel,
                                       s["event_window"])
        out["results"][kind] = {}
        for name, edges in s["bins"]:
            label = name.split(":")[0]
            summary = conditional_bins(kap, ret, edges)
            out["results"][kind][label] = summary.to_dict()
            for k, b in enumerate(summary.bins):
                if b.kde_grid is None:
                    continue
                lines = ["x,density"] + [f"{x:.17g},{y:.17g}" for x, y in zip(b.kde_grid, b.kde_values)]
                atomic_write_text(s["out"] / f"kde_{kind}_{label}_bin{k}.csv", "\n".join(lines) + "\n")
            counts = ", ".join(str(c) for c in summary.counts)
            print(f"{kind:>8} {label:>8}: counts [{counts}]")
    atomic_write_json(s["out"] / "bins.json", out)
    return EXIT_OK


def _print_checks(checks):
    ok = True
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        exp = ", ".join(f"{v:.7g}" for v in c.expected)
        got = ", ".join(f"{v:.7g}" for v in c.computed)
        print(f"{status}  {c.label:<34} expected [{exp}]  computed [{got}]  tol {c.tol:g}")
        ok &= c.passed
    return ok


def cmd_toy(s):
    ok = _print_checks(worked_checks() + toy_checks())
    return EXIT_OK if ok else EXIT_CHECK


def _band(name, value, target, rel):
    ok = abs(value - target) <= rel * abs(target)
    return {"check": name, "value": value, "target": target, "rel_band": rel, "passed": ok}


def cmd_random_experiment(s):
    table = appendix_experiment(s["sizes"], s["reps"], s["seed"])
    checks = []
    pearson = [row["pearson"] for row in table]
    checks.append({"check": "pearson strictly increasing in N", "value": pearson,
                   "passed": bool(np.all(np.diff(pearson) > 0))})
    by_n = {row["n"]: row["pearson"] for row in table}
    if 50 in by_n:
        checks.append({"check": "pearson at N=50 >= 0.98", "value": by_n[50],
                       "passed": by_n[50] >= PEARSON_MIN_50})
    if 5 in by_n:
        lo, hi = PEARSON_BAND_5
        checks.append({"check": "pearson at N=5 in [0.6, 0.95]", "value": by_n[5],
                       "passed": lo <= by_n[5] <= hi})
    n = s["spectral_n"]
    sums = spectral_sums(n, n, s["seed"])
    neg, pos = bessel_constants()
    checks.append(_band("mean exp(-lambda)", sums["mean_exp_neg"], neg, BESSEL_BANDS[0]))
    checks.append(_band("mean exp(lambda)", sums["mean_exp_pos"], pos, BESSEL_BANDS[1]))
    for k, m in enumerate(sums["moments"], start=1):
        checks.append(_band(f"moment k={k}", m, float(catalan(k)), CATALAN_BAND))
    for c in checks:
        v = c["value"]
        shown = ", ".join(f"{x:.6f}" for x in v) if isinstance(v, list) else f"{v:.6f}"
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['check']:<34} {shown}")
    atomic_write_json(s["out"] / "appendix.json", {
        "seed": s["seed"],
        "reps": s["reps"],
        "pearson_table": table,
        "spectral_sums": sums,
        "checks": checks,
    })
    return EXIT_OK if all(c["passed"] for c in checks) else EXIT_CHECK


COMMANDS = {
    "analyze": cmd_analyze,
    "events": cmd_events,
    "bins": cmd_bins,
    "toy": cmd_toy,
    "random-experiment": cmd_random_experiment,
}


# parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="key=value file; flags override its entries")
    common.add_argument("--out", help="output directory (default: .)")
    common.add_argument("--seed", help="base random seed (default: 0)")

    data = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    data.add_argument("--input", help="CSV with header date,<asset1>,<asset2>,...")
    data.add_argument("--kind", choices=("prices", "returns"), help="input semantics (default: prices)")

    window = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    window.add_argument("--window", help="rolling window width in days (default: 400)")
    window.add_argument("--step", help="rolling step in days (default: 30)")
    window.add_argument("--threshold", help="binarization threshold (default: 0.25)")
    window.add_argument("--amri", help="AMRI H:p pairs, comma separated (default: 1:3)")
    window.add_argument("--crf", help="CRF component counts, comma separated (default: 1)")
    window.add_argument("--n-jobs", dest="n_jobs", help="worker threads for windows (default: 1)")

    event = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    event.add_argument("--tau", help="event thresholds, comma separated (default: -0.01,-0.005)")
    event.add_argument("--event-window", dest="event_window", help="sliding-mean width (default: 20)")
    event.add_argument("--event-mode", dest="event_mode", choices=("sliding", "daily"),
                       help="sliding mean below tau, or daily mean below tau for a full run")

    parser = _Parser(prog="signbalance", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    quiet = {"argument_default": argparse.SUPPRESS}
    sub.add_parser("analyze", parents=[common, data, window], help="rolling indicator series", **quiet)
    sub.add_parser("events", parents=[common, data, event], help="systemic event detection", **quiet)
    bins = sub.add_parser("bins", parents=[common, data, window, event],
                          help="kappa-conditional return statistics", **quiet)
    bins.add_argument("--bins", action="append",
                      help=f"bin preset ({', '.join(BIN_PRESETS)}) or custom:<e0>,<e1>,...; "
                           "repeat for several (default: equal5 and paper5)")
    sub.add_parser("toy", parents=[common], help="check the reference examples", **quiet)
    rnd = sub.add_parser("random-experiment", parents=[common], help="random-matrix experiments",
                         **quiet)
    rnd.add_argument("--sizes", help="matrix sizes, comma separated (default: 5,10,20,50)")
    rnd.add_argument("--reps", help="matrices per size, at least 30 (default: 100)")
    rnd.add_argument("--spectral-n", dest="spectral_n",
                     help="N = T of the iid normal panel (default: 500)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        s = resolve_settings(args)
        return COMMANDS[args.command](s)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except SignBalanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
