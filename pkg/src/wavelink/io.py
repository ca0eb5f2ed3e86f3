"""CSV/JSON emission and ingestion for series, heatmaps and benchmarks.

Every file starts with a provenance block (tool version, parameter echo,
unit note) sufficient to reproduce the run for the deterministic methods.
CSV uses '#'-prefixed comment lines; JSON carries a "provenance" object.
Floats are written with repr precision so both formats decode to identical
in-memory values.
"""

from __future__ import annotations

import dataclasses
import json
from importlib import metadata

import numpy as np

from .analytic import TimeSeries
from .params import SystemParams
from .sweep import BenchReport, ComparisonStats, HeatmapGrid, SweepSpec

try:
    VERSION = metadata.version("wavelink")
except metadata.PackageNotFoundError:  # running from a source tree
    VERSION = "0+unknown"

UNIT_NOTE = "rates are angular (rad/ns); suffixed inputs map f -> 2*pi*f; times in ns; eta per ns"


def _fmt(x: float) -> str:
    return repr(float(x))


def _provenance(kind: str, params: dict) -> dict:
    return {"tool": "wavelink", "version": VERSION, "kind": kind, "units": UNIT_NOTE, "params": params}


def _csv_header(prov: dict) -> list[str]:
    lines = [f"# wavelink {prov['version']} {prov['kind']}", f"# units: {prov['units']}"]
    lines.append("# params: " + json.dumps(prov["params"], sort_keys=True))
    return lines


def _params_dict(p: SystemParams) -> dict:
    return dataclasses.asdict(p)


# --- time series -----------------------------------------------------------

def write_series(path, series_by_method: dict[str, TimeSeries], p: SystemParams, fmt: str = "csv"):
    """Write one or more method column groups on a shared time grid."""
    methods = list(series_by_method)
    prov = _provenance("evolve", {"system": _params_dict(p), "methods": methods})
    t = series_by_method[methods[0]].t
    if fmt == "csv":
        cols = ["t"]
        for m in methods:
            suffix = "" if len(methods) == 1 else f"_{m}"
            cols += [f"p_a{suffix}", f"p_wg{suffix}", f"p_b{suffix}"]
        lines = _csv_header(prov) + [",".join(cols)]
        for i in range(t.size):
            row = [_fmt(t[i])]
            for m in methods:
                s = series_by_method[m]
                row += [_fmt(s.p_a[i]), _fmt(s.p_wg[i]), _fmt(s.p_b[i])]
            lines.append(",".join(row))
        _write_text(path, lines)
    elif fmt == "json":
        doc = {
            "provenance": prov,
            "t": t.tolist(),
            "series": {
                m: {"p_a": s.p_a.tolist(), "p_wg": s.p_wg.tolist(), "p_b": s.p_b.tolist()}
                for m, s in series_by_method.items()
            },
        }
        _write_text(path, [json.dumps(doc)])
    else:
        raise ValueError(f"unknown format {fmt!r}")


def read_series(path) -> dict[str, TimeSeries]:
    """Inverse of write_series (both formats)."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        t = np.array(doc["t"])
        return {
            m: TimeSeries(t=t, p_a=np.array(s["p_a"]), p_wg=np.array(s["p_wg"]), p_b=np.array(s["p_b"]))
            for m, s in doc["series"].items()
        }
    rows, header = _read_csv(text)
    cols = {name: rows[:, i] for i, name in enumerate(header)}
    t = cols.pop("t")
    if "p_a" in cols:
        return {"series": TimeSeries(t=t, p_a=cols["p_a"], p_wg=cols["p_wg"], p_b=cols["p_b"])}
    methods = [name[len("p_a_"):] for name in header if name.startswith("p_a_")]
    return {
        m: TimeSeries(t=t, p_a=cols[f"p_a_{m}"], p_wg=cols[f"p_wg_{m}"], p_b=cols[f"p_b_{m}"])
        for m in methods
    }


# --- heatmaps --------------------------------------------------------------

def write_heatmap(path, grid: HeatmapGrid, fmt: str = "csv"):
    """Long-format rows (one per cell) or a nested JSON document."""
    spec_echo = dataclasses.asdict(grid.spec)
    prov = _provenance("sweep", {"spec": spec_echo, "wall_time_s": grid.wall_time})
    nx, ny = grid.fidelity.shape
    if fmt == "csv":
        lines = _csv_header(prov)
        lines.append("g,delta_omega,fidelity,latency,efficiency,n_kind,poisoned")
        for i in range(nx):
            for j in range(ny):
                lines.append(
                    ",".join(
                        [
                            _fmt(grid.g_values[i]),
                            _fmt(grid.dw_values[j]),
                            _fmt(grid.fidelity[i, j]),
                            _fmt(grid.latency[i, j]),
                            _fmt(grid.efficiency[i, j]),
                            str(grid.n_kind[i, j]).replace(",", ";"),
                            str(int(grid.poisoned[i, j])),
                        ]
                    )
                )
        _write_text(path, lines)
    elif fmt == "json":
        doc = {
            "provenance": prov,
            "spec": spec_echo,
            "g_values": grid.g_values.tolist(),
            "dw_values": grid.dw_values.tolist(),
            "fidelity": _nan_list(grid.fidelity),
            "latency": _nan_list(grid.latency),
            "efficiency": _nan_list(grid.efficiency),
            "n_kind": grid.n_kind.tolist(),
            "poisoned": grid.poisoned.astype(int).tolist(),
            "wall_time_s": grid.wall_time,
        }
        _write_text(path, [json.dumps(doc)])
    else:
        raise ValueError(f"unknown format {fmt!r}")


def read_heatmap(path) -> HeatmapGrid:
    """Inverse of write_heatmap (both formats)."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        spec = SweepSpec(**doc["spec"])
        return HeatmapGrid(
            spec=spec,
            g_values=np.array(doc["g_values"]),
            dw_values=np.array(doc["dw_values"]),
            fidelity=_nan_array(doc["fidelity"]),
            latency=_nan_array(doc["latency"]),
            efficiency=_nan_array(doc["efficiency"]),
            n_kind=np.array(doc["n_kind"], dtype=object),
            poisoned=np.array(doc["poisoned"], dtype=bool),
            wall_time=doc.get("wall_time_s", 0.0),
        )
    spec = None
    for line in text.splitlines():
        if line.startswith("# params: "):
            spec = SweepSpec(**json.loads(line[len("# params: "):])["spec"])
            break
    if spec is None:
        raise ValueError(f"{path}: missing provenance spec echo")
    gs, dws = spec.g_values, spec.dw_values
    nx, ny = gs.size, dws.size
    fid = np.full((nx, ny), np.nan)
    lat = np.full((nx, ny), np.nan)
    eff = np.full((nx, ny), np.nan)
    kinds = np.full((nx, ny), "", dtype=object)
    poisoned = np.zeros((nx, ny), dtype=bool)
    body = [l for l in text.splitlines() if l and not l.startswith("#")]
    for row in body[1:]:  # skip column header
        parts = row.split(",")
        g, dw = float(parts[0]), float(parts[1])
        i = int(np.argmin(np.abs(gs - g)))
        j = int(np.argmin(np.abs(dws - dw)))
        fid[i, j], lat[i, j], eff[i, j] = float(parts[2]), float(parts[3]), float(parts[4])
        kinds[i, j] = parts[5]
        poisoned[i, j] = bool(int(parts[6]))
    return HeatmapGrid(
        spec=spec, g_values=gs, dw_values=dws, fidelity=fid, latency=lat,
        efficiency=eff, n_kind=kinds, poisoned=poisoned,
    )


def compare_heatmaps(grid_a: HeatmapGrid, grid_b: HeatmapGrid) -> ComparisonStats:
    """Difference statistics for two grids on identical axes."""
    if grid_a.fidelity.shape != grid_b.fidelity.shape or not (
        np.array_equal(grid_a.g_values, grid_b.g_values)
        and np.array_equal(grid_a.dw_values, grid_b.dw_values)
    ):
        raise ValueError("heatmaps were computed on different grids")
    ok = ~(grid_a.poisoned | grid_b.poisoned)
    df = np.abs(grid_a.fidelity[ok] - grid_b.fidelity[ok])
    dl = np.abs(grid_a.latency[ok] - grid_b.latency[ok])
    return ComparisonStats(
        method_a=grid_a.method,
        method_b=grid_b.method,
        mean_fidelity_diff=float(np.mean(df)),
        max_fidelity_diff=float(np.max(df)),
        mean_latency_diff=float(np.mean(dl)),
        max_latency_diff=float(np.max(dl)),
        wall_time_a=grid_a.wall_time,
        wall_time_b=grid_b.wall_time,
        poisoned_cells=int(np.count_nonzero(~ok)),
    )


def write_comparison(path, stats: ComparisonStats, fmt: str = "csv"):
    d = dataclasses.asdict(stats)
    prov = _provenance("compare", {"methods": [stats.method_a, stats.method_b]})
    if fmt == "csv":
        keys = list(d)
        lines = _csv_header(prov) + [",".join(keys), ",".join(str(d[k]) for k in keys)]
        _write_text(path, lines)
    elif fmt == "json":
        _write_text(path, [json.dumps({"provenance": prov, **d})])
    else:
        raise ValueError(f"unknown format {fmt!r}")


def write_bench(path, report: BenchReport, fmt: str = "csv"):
    prov = _provenance("bench", {"repetitions": report.repetitions,
                                 "system": _params_dict(report.params) if report.params else None})
    cols = ["n_t", "analytic_mean_s", "analytic_std_s", "lindblad_mean_s", "lindblad_std_s",
            "speedup", "timing_flagged"]
    if fmt == "csv":
        lines = _csv_header(prov) + [",".join(cols)]
        for r in report.rows:
            lines.append(",".join([
                str(r.n_t), _fmt(r.analytic_mean), _fmt(r.analytic_std),
                _fmt(r.lindblad_mean), _fmt(r.lindblad_std), _fmt(r.speedup),
                str(int(r.timing_flagged)),
            ]))
        _write_text(path, lines)
    elif fmt == "json":
        doc = {"provenance": prov, "rows": [dataclasses.asdict(r) for r in report.rows]}
        _write_text(path, [json.dumps(doc)])
    else:
        raise ValueError(f"unknown format {fmt!r}")


# --- helpers ---------------------------------------------------------------

def _nan_list(arr: np.ndarray) -> list:
    return [[None if np.isnan(v) else float(v) for v in row] for row in arr]


def _nan_array(rows: list) -> np.ndarray:
    return np.array([[np.nan if v is None else v for v in row] for row in rows], dtype=float)


def _write_text(path, lines: list[str]):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_text(path) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_csv(text: str):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in l.split(",")] for l in lines[1:]])
    return rows, header
