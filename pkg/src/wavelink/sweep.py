"""Parameter-space sweeps over (g, detuning), method comparison statistics,
and the timing benchmark harness.

Cells are embarrassingly parallel: every cell writes into a pre-assigned
slot, so the output is bit-identical regardless of worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .analytic import lossy_occupations, occupations_series, time_grid
from .metrics import NoTransferError, classify_n, predict_latency, transfer_metrics
from .params import SystemParams, derive

METHODS = ("analytic", "lindblad", "effective", "predictor")


@dataclass(frozen=True)
class SweepSpec:
    """One heatmap configuration.  All rates in rad/ns, eta per ns."""

    g_min: float
    g_max: float
    dw_min: float
    dw_max: float
    grid_nx: int = 50           # g axis
    grid_ny: int = 50           # detuning axis
    kappa: float = 0.0
    gamma: float = 0.0
    eta: float = 0.0
    t_max: float = 40.0
    n_t: int = 400
    method: str = "analytic"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.grid_nx < 1 or self.grid_ny < 1:
            raise ValueError("grid dimensions must be >= 1")
        if self.g_min <= 0:
            raise ValueError("g_min must be > 0 (no transmission at g = 0)")
        if self.g_max < self.g_min or self.dw_max < self.dw_min:
            raise ValueError("axis maxima must be >= minima")
        if self.t_max <= 0:
            raise ValueError("t_max must be > 0")
        if self.method != "predictor" and self.n_t < 2:
            raise ValueError("swept methods need n_t >= 2")

    @property
    def g_values(self) -> np.ndarray:
        if self.grid_nx == 1:
            return np.array([self.g_min])
        return np.linspace(self.g_min, self.g_max, self.grid_nx)

    @property
    def dw_values(self) -> np.ndarray:
        if self.grid_ny == 1:
            return np.array([self.dw_min])
        return np.linspace(self.dw_min, self.dw_max, self.grid_ny)


@dataclass
class HeatmapGrid:
    """Per-cell transfer metrics on the (g, detuning) grid.

    Arrays are indexed [i_g, j_dw].  Poisoned cells (degenerate oracle
    eigensystem, predictor out of domain) carry NaN metrics and an explicit
    flag rather than silently propagating.
    """

    spec: SweepSpec
    g_values: np.ndarray
    dw_values: np.ndarray
    fidelity: np.ndarray
    latency: np.ndarray
    efficiency: np.ndarray
    n_kind: np.ndarray          # dtype=object, classification strings
    poisoned: np.ndarray        # bool
    wall_time: float = 0.0

    @property
    def method(self) -> str:
        return self.spec.method


@dataclass(frozen=True)
class ComparisonStats:
    """Elementwise difference statistics between two sweeps."""

    method_a: str
    method_b: str
    mean_fidelity_diff: float
    max_fidelity_diff: float
    mean_latency_diff: float
    max_latency_diff: float
    wall_time_a: float
    wall_time_b: float
    poisoned_cells: int


def _cell_metrics(spec: SweepSpec, g: float, dw: float, t: np.ndarray):
    p = SystemParams(delta_omega=dw, g=g, kappa=spec.kappa, gamma=spec.gamma)
    d = derive(p)
    kind = classify_n(d).kind
    if spec.method == "predictor":
        tau = predict_latency(d)
        _, _, p_b = lossy_occupations(tau, d)
        fid = float(p_b)
        return fid, tau, fid - spec.eta * tau, kind
    if spec.method == "analytic":
        series = occupations_series(p, t, model="lossy")
    elif spec.method == "effective":
        series = oracle.effective_propagate(p, t)
    else:
        series = oracle.lindblad_evolve(p, t)
    m = transfer_metrics(series, spec.eta)
    return m.fidelity, m.latency, m.efficiency, kind


def run_sweep(spec: SweepSpec, workers: int = 1) -> HeatmapGrid:
    """Evaluate the chosen method's transfer metrics at every grid cell."""
    gs, dws = spec.g_values, spec.dw_values
    nx, ny = gs.size, dws.size
    fid = np.full((nx, ny), np.nan)
    lat = np.full((nx, ny), np.nan)
    eff = np.full((nx, ny), np.nan)
    kinds = np.full((nx, ny), "", dtype=object)
    poisoned = np.zeros((nx, ny), dtype=bool)
    t = None if spec.method == "predictor" else time_grid(spec.t_max, spec.n_t)
    start = time.perf_counter()

    def do_cell(ij):
        i, j = ij
        try:
            f, l, e, kind = _cell_metrics(spec, gs[i], dws[j], t)
            fid[i, j], lat[i, j], eff[i, j] = f, l, e
            kinds[i, j] = kind
        except (oracle.DegeneracyError, oracle.IntegrationError, NoTransferError) as exc:
            poisoned[i, j] = True
            kinds[i, j] = f"poisoned: {type(exc).__name__}"

    cells = [(i, j) for i in range(nx) for j in range(ny)]
    if workers <= 1:
        for ij in cells:
            do_cell(ij)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(do_cell, cells, chunksize=max(1, len(cells) // (4 * workers))))
    wall = time.perf_counter() - start
    return HeatmapGrid(
        spec=spec, g_values=gs, dw_values=dws, fidelity=fid, latency=lat,
        efficiency=eff, n_kind=kinds, poisoned=poisoned, wall_time=wall,
    )


def compare_methods(spec: SweepSpec, methods: tuple[str, str], workers: int = 1) -> ComparisonStats:
    """Run two methods on the identical grid and report difference stats."""
    from dataclasses import replace

    grid_a = run_sweep(replace(spec, method=methods[0]), workers=workers)
    grid_b = run_sweep(replace(spec, method=methods[1]), workers=workers)
    ok = ~(grid_a.poisoned | grid_b.poisoned)
    df = np.abs(grid_a.fidelity[ok] - grid_b.fidelity[ok])
    dl = np.abs(grid_a.latency[ok] - grid_b.latency[ok])
    return ComparisonStats(
        method_a=methods[0],
        method_b=methods[1],
        mean_fidelity_diff=float(np.mean(df)),
        max_fidelity_diff=float(np.max(df)),
        mean_latency_diff=float(np.mean(dl)),
        max_latency_diff=float(np.max(dl)),
        wall_time_a=grid_a.wall_time,
        wall_time_b=grid_b.wall_time,
        poisoned_cells=int(np.count_nonzero(~ok)),
    )


@dataclass(frozen=True)
class BenchRow:
    n_t: int
    analytic_mean: float
    analytic_std: float
    lindblad_mean: float
    lindblad_std: float
    speedup: float
    timing_flagged: bool


@dataclass(frozen=True)
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)
    repetitions: int = 0
    params: SystemParams | None = None


def reference_params() -> SystemParams:
    """The reference time-series operating point: detuning 500 MHz,
    g 1.1 GHz, kappa 3 MHz, gamma 2 MHz."""
    tp = 2.0 * np.pi
    return SystemParams(delta_omega=0.5 * tp, g=1.1 * tp, kappa=0.003 * tp, gamma=0.002 * tp)


def benchmark(
    n_t_list: list[int],
    repetitions: int = 10,
    p: SystemParams | None = None,
    t_max: float = 3.0,
) -> BenchReport:
    """Time the closed-form series against the Lindblad oracle.

    One warm-up run per method is excluded; each reported time is the mean
    over `repetitions` runs on identical grids.  Runs are single-threaded so
    the ratios stay comparable.
    """
    if repetitions < 3:
        raise ValueError(f"need repetitions >= 3, got {repetitions}")
    if p is None:
        p = reference_params()
    resolution = _timer_resolution()
    rows = []
    for n_t in n_t_list:
        t = time_grid(t_max, n_t)
        fns = {
            "analytic": lambda: occupations_series(p, t, model="lossy"),
            "lindblad": lambda: oracle.lindblad_evolve(p, t),
        }
        means, stds, flagged = {}, {}, False
        for name, fn in fns.items():
            fn()  # warm-up, excluded
            samples = []
            for _ in range(repetitions):
                start = time.perf_counter()
                fn()
                samples.append(time.perf_counter() - start)
            means[name] = float(np.mean(samples))
            stds[name] = float(np.std(samples))
            if means[name] < 10.0 * resolution:
                flagged = True
        rows.append(
            BenchRow(
                n_t=n_t,
                analytic_mean=means["analytic"],
                analytic_std=stds["analytic"],
                lindblad_mean=means["lindblad"],
                lindblad_std=stds["lindblad"],
                speedup=means["lindblad"] / means["analytic"],
                timing_flagged=flagged,
            )
        )
    return BenchReport(rows=rows, repetitions=repetitions, params=p)


def _timer_resolution() -> float:
    import time as _t

    return _t.get_clock_info("perf_counter").resolution
