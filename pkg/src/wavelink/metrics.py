"""Transfer-quality metrics: fidelity, latency, efficiency, and the
closed-form latency predictor.

For the pure states handled here, fidelity is the occupation probability of
the receiving qubit, so "peak fidelity" is operationalized as the argmax of
the efficiency J(eta, t) = P_B(t) - eta*t over the evaluated grid.  eta is
stored per ns; the conventional per-second values (1e4 .. 1e8) convert via
eta_per_ns = eta_per_s * 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analytic import TimeSeries
from .params import DerivedParams

ETA_PER_SECOND = 1e-9  # multiply a per-second eta by this to get per-ns


class NoTransferError(ValueError):
    """Latency predictor called where no transfer can occur."""


@dataclass(frozen=True)
class TransferMetrics:
    """Fidelity/latency/efficiency at the efficiency-optimal grid time."""

    fidelity: float
    latency: float
    efficiency: float
    eta: float              # per ns
    achieved_index: int


@dataclass(frozen=True)
class NClass:
    """Classification of N = theta/delta against small rationals."""

    n_value: float
    kind: str               # "even", "odd_odd", "generic", "undefined"
    numerator: int
    denominator: int
    max_denominator: int


def transfer_metrics(series: TimeSeries, eta: float = 0.0) -> TransferMetrics:
    """Pick the efficiency-optimal point of a series.

    Ties in J go to the earliest grid time; if nothing beats t = 0 the
    outcome is the "no transmission" point (latency 0, fidelity P_B(0)).
    """
    if len(series) == 0:
        raise ValueError("empty series")
    if eta < 0:
        raise ValueError(f"eta must be >= 0, got {eta}")
    j = series.p_b - eta * series.t
    idx = int(np.argmax(j))  # first index on exact ties
    if j[idx] <= j[0]:
        idx = 0
    return TransferMetrics(
        fidelity=float(series.p_b[idx]),
        latency=float(series.t[idx]),
        efficiency=float(j[idx]),
        eta=eta,
        achieved_index=idx,
    )


def predict_latency(d: DerivedParams) -> float:
    """Closed-form latency estimate round(theta/(theta-delta)) * pi/theta.

    Valid in the small-loss regime where the occupation peaks sit on the
    half-period comb of the internal oscillation.
    """
    if d.Omega == 0.0:
        raise NoTransferError("g = 0: no transfer")
    if d.theta <= d.delta or d.delta < 0:
        raise NoTransferError(f"predictor needs theta > delta >= 0 (theta={d.theta}, delta={d.delta})")
    c = math.floor(d.theta / (d.theta - d.delta) + 0.5)  # round half-up
    return c * math.pi / d.theta


def classify_n(d: DerivedParams, max_den: int = 9, tol: float = 0.02) -> NClass:
    """Classify N = theta/delta by its best small-denominator rational.

    Odd/odd ratios mark low-fidelity regions; even integers mark fast,
    high-fidelity transfer.  `tol` is relative to N.
    """
    if max_den < 1:
        raise ValueError(f"max_den must be >= 1, got {max_den}")
    if d.delta == 0.0 or d.Omega == 0.0:
        return NClass(n_value=math.inf if d.delta == 0.0 else math.nan, kind="undefined",
                      numerator=0, denominator=0, max_denominator=max_den)
    n = d.theta / d.delta
    frac = Fraction(n).limit_denominator(max_den)
    a, b = frac.numerator, frac.denominator
    close = abs(n - a / b) <= tol * abs(n)
    if close and b == 1 and a % 2 == 0:
        kind = "even"
    elif close and a % 2 == 1 and b % 2 == 1:
        kind = "odd_odd"
    else:
        kind = "generic"
    return NClass(n_value=n, kind=kind, numerator=a, denominator=b, max_denominator=max_den)


def lossless_peak_bound(n_class: NClass) -> float:
    """Upper bound on lossless P_B for an odd/odd ratio theta/delta = a/b.

    The receiving qubit peaks only where the waveguide is empty,
    theta*t = pi*n; there P_B = (1 - cos(theta t) cos(delta t))/2.
    Scanning that comb over one common period gives the bound; for (3, 1)
    it is 3/4.
    """
    if n_class.kind != "odd_odd":
        raise ValueError(f"peak bound defined only for odd_odd, got {n_class.kind!r}")
    a, b = n_class.numerator, n_class.denominator
    n = np.arange(2 * a + 1)
    return float(np.max(0.5 * (1.0 - (-1.0) ** n * np.cos(np.pi * n * b / a))))
