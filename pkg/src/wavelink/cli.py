"""Command-line entry point: evolve, sweep, predict, compare, bench.

Rate-valued flags require a unit suffix (Hz/kHz/MHz/GHz) and map f to
2*pi*f rad/ns; bare numbers are rejected to prevent silent unit errors.
Times accept an optional ns/us/ms/s suffix (default ns); --eta takes the
conventional per-second weight and is converted to per ns internally.

Exit codes: 0 success, 2 usage, 3 parameter/domain, 4 integration, 5 I/O.
"""

from __future__ import annotations

import argparse
import os
import re
import sys

from . import io, metrics, oracle, sweep
from .analytic import GridError, ModelDomainError, occupations_series, time_grid
from .metrics import ETA_PER_SECOND, NoTransferError
from .params import ParameterError, RateParseError, SystemParams, derive, parse_rate

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTEGRATION, EXIT_IO = 0, 2, 3, 4, 5

_TIME_SCALE = {"": 1.0, "ns": 1.0, "us": 1e3, "ms": 1e6, "s": 1e9}
_TIME_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([a-z]*)\s*$")


def _time_ns(text: str) -> float:
    m = _TIME_RE.match(text)
    if not m or m.group(2) not in _TIME_SCALE:
        raise argparse.ArgumentTypeError(f"cannot parse time {text!r} (expected e.g. 3ns)")
    return float(m.group(1)) * _TIME_SCALE[m.group(2)]


def _rate(text: str) -> float:
    try:
        return parse_rate(text)
    except RateParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _grid_shape(text: str) -> tuple[int, int]:
    m = re.match(r"^(\d+)x(\d+)$", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse grid {text!r} (expected e.g. 50x50)")
    return int(m.group(1)), int(m.group(2))


def _default_workers() -> int:
    env = os.environ.get("WAVELINK_WORKERS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wavelink",
                                     description="Waveguide-mediated two-qubit transfer toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_system_flags(sp, required=True):
        sp.add_argument("--g", type=_rate, required=required, help="coupling strength, e.g. 1.1GHz")
        sp.add_argument("--detuning", type=_rate, default=0.0, help="waveguide-qubit detuning, e.g. 500MHz")
        sp.add_argument("--kappa", type=_rate, default=0.0, help="waveguide decay rate")
        sp.add_argument("--gamma", type=_rate, default=0.0, help="qubit decay rate")
        sp.add_argument("--omega-q", type=_rate, default=0.0, help="qubit frequency (global phase only)")

    def add_output_flags(sp):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, help="output path (default: stdout-adjacent default name)")

    ev = sub.add_parser("evolve", help="emit occupation time series")
    add_system_flags(ev)
    ev.add_argument("--t-max", type=_time_ns, default=3.0, help="time window, e.g. 3ns")
    ev.add_argument("--steps", type=int, default=1000)
    ev.add_argument("--method", choices=("analytic", "lindblad", "effective", "all"), default="analytic")
    add_output_flags(ev)

    sw = sub.add_parser("sweep", help="emit a (g, detuning) heatmap")
    sw.add_argument("--g-min", type=_rate, required=True)
    sw.add_argument("--g-max", type=_rate, required=True)
    sw.add_argument("--dw-min", type=_rate, default=0.0)
    sw.add_argument("--dw-max", type=_rate, required=True)
    sw.add_argument("--grid", type=_grid_shape, default=(50, 50), help="nx x ny, e.g. 50x50")
    sw.add_argument("--kappa", type=_rate, default=0.0)
    sw.add_argument("--gamma", type=_rate, default=0.0)
    sw.add_argument("--eta", type=float, default=0.0, help="latency weight in 1/s (e.g. 1e6)")
    sw.add_argument("--t-max", type=_time_ns, default=40.0)
    sw.add_argument("--steps", type=int, default=400)
    sw.add_argument("--method", choices=sweep.METHODS, default="analytic")
    sw.add_argument("--workers", type=int, default=_default_workers())
    add_output_flags(sw)

    pr = sub.add_parser("predict", help="closed-form latency prediction for one point")
    add_system_flags(pr)
    pr.add_argument("--strict", action="store_true",
                    help="exit nonzero when no transfer is predicted")

    cp = sub.add_parser("compare", help="difference statistics between two heatmap files")
    cp.add_argument("file_a")
    cp.add_argument("file_b")
    add_output_flags(cp)

    bn = sub.add_parser("bench", help="time analytic series vs the Lindblad oracle")
    bn.add_argument("--reps", type=int, default=10)
    bn.add_argument("--steps", type=int, nargs="+", default=[10, 100, 1000, 10_000, 100_000],
                    help="list of time-step counts")
    bn.add_argument("--t-max", type=_time_ns, default=3.0)
    add_output_flags(bn)
    return parser


def _system_params(args) -> SystemParams:
    return SystemParams(omega_q=args.omega_q, delta_omega=args.detuning,
                        g=args.g, kappa=args.kappa, gamma=args.gamma)


def cmd_evolve(args) -> int:
    p = _system_params(args)
    t = time_grid(args.t_max, args.steps)
    methods = ("analytic", "effective", "lindblad") if args.method == "all" else (args.method,)
    series = {}
    for m in methods:
        if m == "analytic":
            series[m] = occupations_series(p, t, model="lossy")
        elif m == "effective":
            series[m] = oracle.effective_propagate(p, t)
        else:
            series[m] = oracle.lindblad_evolve(p, t)
    out = args.out or f"evolve.{args.format}"
    io.write_series(out, series, p, fmt=args.format)
    print(f"wrote {len(t)} rows ({', '.join(methods)}) to {out}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = sweep.SweepSpec(
        g_min=args.g_min, g_max=args.g_max, dw_min=args.dw_min, dw_max=args.dw_max,
        grid_nx=args.grid[0], grid_ny=args.grid[1], kappa=args.kappa, gamma=args.gamma,
        eta=args.eta * ETA_PER_SECOND, t_max=args.t_max, n_t=args.steps, method=args.method,
    )
    grid = sweep.run_sweep(spec, workers=max(1, args.workers))
    out = args.out or f"sweep.{args.format}"
    io.write_heatmap(out, grid, fmt=args.format)
    n_poison = int(grid.poisoned.sum())
    print(f"wrote {grid.fidelity.size} cells ({args.method}, {n_poison} poisoned) to {out} "
          f"in {grid.wall_time:.2f} s")
    return EXIT_OK


def cmd_predict(args) -> int:
    p = _system_params(args)
    d = derive(p)
    n_class = metrics.classify_n(d)
    try:
        tau = metrics.predict_latency(d)
    except NoTransferError as exc:
        print(f"no transfer: {exc}")
        return EXIT_DOMAIN if args.strict else EXIT_OK
    report = (f"latency={tau:.6g} ns  theta={d.theta:.6g} rad/ns  delta={d.delta:.6g} rad/ns  "
              f"N={n_class.n_value:.6g} ({n_class.kind})")
    if n_class.kind == "odd_odd":
        bound = metrics.lossless_peak_bound(n_class)
        report += (f"  ratio={n_class.numerator}/{n_class.denominator}"
                   f"  lossless_peak_bound={bound:.6g}")
    print(report)
    return EXIT_OK


def cmd_compare(args) -> int:
    grid_a = io.read_heatmap(args.file_a)
    grid_b = io.read_heatmap(args.file_b)
    stats = io.compare_heatmaps(grid_a, grid_b)
    out = args.out or f"compare.{args.format}"
    io.write_comparison(out, stats, fmt=args.format)
    print(f"{stats.method_a} vs {stats.method_b}: "
          f"mean|dF|={stats.mean_fidelity_diff:.3e} max|dF|={stats.max_fidelity_diff:.3e} "
          f"mean|dtau|={stats.mean_latency_diff:.3e} ns max|dtau|={stats.max_latency_diff:.3e} ns "
          f"({stats.poisoned_cells} poisoned); wrote {out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.reps < 3:
        print("error: --reps must be >= 3", file=sys.stderr)
        return EXIT_USAGE
    report = sweep.benchmark(args.steps, repetitions=args.reps, t_max=args.t_max)
    out = args.out or f"bench.{args.format}"
    io.write_bench(out, report, fmt=args.format)
    for r in report.rows:
        flag = "  (timer-resolution limited)" if r.timing_flagged else ""
        print(f"N_t={r.n_t:>8}  analytic {r.analytic_mean*1e3:8.3f} ms  "
              f"lindblad {r.lindblad_mean*1e3:8.3f} ms  speedup {r.speedup:6.1f}x{flag}")
    print(f"wrote {out}")
    return EXIT_OK


_COMMANDS = {
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "predict": cmd_predict,
    "compare": cmd_compare,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, RateParseError, ModelDomainError, GridError,
            oracle.DegeneracyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except oracle.IntegrationError as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
