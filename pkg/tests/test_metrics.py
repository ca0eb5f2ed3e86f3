"""Fidelity/latency/efficiency extraction, predictor and N classification."""

import math

import numpy as np
import pytest

from conftest import TWO_PI, reference_point
from wavelink.analytic import TimeSeries, occupations_series, time_grid
from wavelink.metrics import (
    ETA_PER_SECOND,
    NoTransferError,
    classify_n,
    lossless_peak_bound,
    predict_latency,
    transfer_metrics,
)
from wavelink.params import SystemParams, derive


# --- transfer_metrics -------------------------------------------------------

def test_no_transmission_outcome():
    t = np.linspace(0.0, 10.0, 101)
    zero = np.zeros_like(t)
    m = transfer_metrics(TimeSeries(t=t, p_a=1.0 - zero, p_wg=zero, p_b=zero), eta=1e-3)
    assert m.latency == 0.0 and m.fidelity == 0.0 and m.achieved_index == 0


def test_lossless_resonant_peak():
    p = SystemParams(g=1.0)
    d = derive(p)
    # grid chosen so t = pi/theta is the exact midpoint sample
    t = np.linspace(0.0, 2.0 * math.pi / d.theta, 1001)
    m = transfer_metrics(occupations_series(p, t, model="lossless"), eta=0.0)
    assert m.fidelity == pytest.approx(1.0, abs=1e-9)
    assert m.latency == pytest.approx(math.pi / d.theta, abs=1e-12)


def test_efficiency_dominates_grid():
    s = occupations_series(reference_point(), time_grid(3.0, 1000))
    eta = 1e7 * ETA_PER_SECOND
    m = transfer_metrics(s, eta)
    j = s.p_b - eta * s.t
    assert m.efficiency == pytest.approx(np.max(j), abs=0.0)
    assert m.fidelity == s.p_b[m.achieved_index]


def test_reference_efficiency_operating_points():
    s = occupations_series(reference_point(), time_grid(3.0, 1000))
    dt = 3.0 / 999
    m7 = transfer_metrics(s, 1e7 * ETA_PER_SECOND)
    m8 = transfer_metrics(s, 1e8 * ETA_PER_SECOND)
    assert abs(m7.latency - 1.904) <= dt
    assert abs(m8.latency - 0.315) <= dt


def test_latency_monotone_in_eta():
    s = occupations_series(reference_point(), time_grid(6.0, 4000))
    etas = [0.0, 1e4, 1e5, 1e6, 1e7, 5e7, 1e8, 1e9]
    lats = [transfer_metrics(s, e * ETA_PER_SECOND).latency for e in etas]
    assert all(l1 >= l2 for l1, l2 in zip(lats, lats[1:]))


def test_transfer_metrics_validation():
    t = np.array([0.0, 1.0])
    s = TimeSeries(t=t, p_a=t * 0, p_wg=t * 0, p_b=t * 0)
    with pytest.raises(ValueError):
        transfer_metrics(TimeSeries(t=t[:0], p_a=t[:0], p_wg=t[:0], p_b=t[:0]))
    with pytest.raises(ValueError):
        transfer_metrics(s, eta=-1.0)


# --- predictor --------------------------------------------------------------

def test_predictor_resonant():
    d = derive(SystemParams(g=1.0))
    assert predict_latency(d) == pytest.approx(math.pi / d.theta, rel=1e-15)


def test_predictor_detuned_comb_multiple():
    # theta/delta = 3 -> C = round(3/2) = 2 -> tau = 2 pi / theta
    d = derive(SystemParams(delta_omega=2.0, g=2.0))
    assert predict_latency(d) == pytest.approx(2.0 * math.pi / d.theta, rel=1e-14)


def test_predictor_no_transfer_sentinels():
    with pytest.raises(NoTransferError):
        predict_latency(derive(SystemParams(delta_omega=0.5, g=0.0)))
    # overdamped resonant point: theta = 0
    with pytest.raises(NoTransferError):
        predict_latency(derive(SystemParams(g=0.01, gamma=1.0)))


def test_predictor_matches_sweep_at_reference_cell():
    p = SystemParams(delta_omega=0.02, g=0.05, kappa=1e-4, gamma=1e-4)
    d = derive(p)
    tau = predict_latency(d)
    s = occupations_series(p, time_grid(250.0, 2500))
    m = transfer_metrics(s, 1e6 * ETA_PER_SECOND)
    assert abs(tau - m.latency) <= math.pi / d.theta


@pytest.mark.xfail(
    reason="g = delta_omega sits exactly on the N = 3 comb tie: the first two "
    "receiver peaks are equal at 3/4, losses pull the swept optimum slightly "
    "before pi/theta while the predictor picks 2 pi/theta, overshooting the "
    "tolerance by under 1%",
    strict=True,
)
def test_predictor_at_comb_tie_cell():
    p = SystemParams(delta_omega=0.05, g=0.05, kappa=1e-4, gamma=1e-4)
    d = derive(p)
    tau = predict_latency(d)
    s = occupations_series(p, time_grid(250.0, 2500))
    m = transfer_metrics(s, 1e6 * ETA_PER_SECOND)
    assert abs(tau - m.latency) <= math.pi / d.theta


@pytest.mark.xfail(
    reason="single-comb-point predictor misses better peaks the efficiency "
    "sweep finds on ~40% of this grid; agreement saturates near 60-84% "
    "across all window/penalty choices tried",
    strict=True,
)
def test_predictor_consistency_small_loss_grid():
    gs = np.linspace(0.01, 0.1, 50) * TWO_PI
    dws = np.linspace(0.0, 0.1, 50) * TWO_PI
    t = time_grid(250.0, 2500)
    eta = 1e6 * ETA_PER_SECOND
    hits = total = 0
    for g in gs:
        for dw in dws:
            p = SystemParams(delta_omega=dw, g=g, kappa=1e-4 * TWO_PI, gamma=1e-4 * TWO_PI)
            d = derive(p)
            tau = predict_latency(d)
            m = transfer_metrics(occupations_series(p, t), eta)
            total += 1
            hits += abs(tau - m.latency) <= math.pi / d.theta
    assert hits / total >= 0.9


# --- N classification -------------------------------------------------------

def ratio_params(n: float) -> SystemParams:
    # theta/delta = n with delta = 1: Omega^2 = n^2 - 1
    return SystemParams(delta_omega=2.0, g=math.sqrt((n**2 - 1.0) / 2.0))


def test_classify_odd_odd_three():
    c = classify_n(derive(ratio_params(3.0)))
    assert c.kind == "odd_odd" and (c.numerator, c.denominator) == (3, 1)


def test_classify_even_four():
    c = classify_n(derive(ratio_params(4.0)))
    assert c.kind == "even" and (c.numerator, c.denominator) == (4, 1)


def test_classify_undefined_cases():
    assert classify_n(derive(SystemParams(g=1.0))).kind == "undefined"
    assert classify_n(derive(SystemParams(delta_omega=0.5, g=0.0))).kind == "undefined"
    assert math.isinf(classify_n(derive(SystemParams(g=1.0))).n_value)


def test_classify_tolerance_window():
    near = classify_n(derive(ratio_params(3.05)))
    assert near.kind == "odd_odd" and (near.numerator, near.denominator) == (3, 1)
    # 2.5 = 5/2: close rational but even denominator
    far = classify_n(derive(ratio_params(2.5)))
    assert far.kind == "generic" and (far.numerator, far.denominator) == (5, 2)


def test_classify_fractional_odd_odd():
    c = classify_n(derive(ratio_params(5.0 / 3.0)))
    assert c.kind == "odd_odd" and (c.numerator, c.denominator) == (5, 3)


def test_classify_scale_invariance():
    for scale in (0.1, 1.0, 7.5):
        c = classify_n(derive(SystemParams(delta_omega=2.0 * scale, g=2.0 * scale)))
        assert c.kind == "odd_odd" and (c.numerator, c.denominator) == (3, 1)


def test_classify_validation():
    with pytest.raises(ValueError):
        classify_n(derive(SystemParams(g=1.0)), max_den=0)


# --- lossless peak bound ----------------------------------------------------

def test_peak_bound_three_one():
    c = classify_n(derive(ratio_params(3.0)))
    assert lossless_peak_bound(c) == pytest.approx(0.75, abs=1e-12)


def test_peak_bound_matches_dense_scan():
    # (5, 3): compare comb evaluation with a brute-force scan of the
    # cross-term bound over one common period
    c = classify_n(derive(ratio_params(5.0 / 3.0)))
    a, b = c.numerator, c.denominator
    theta, delta = float(a), float(b)
    t = np.arange(2 * a + 1) * math.pi / theta  # waveguide-empty comb
    scan = np.max(0.5 * (1.0 - np.cos(theta * t) * np.cos(delta * t)))
    assert lossless_peak_bound(c) == pytest.approx(scan, abs=1e-12)


def test_peak_bound_one_one_is_zero():
    c = classify_n(derive(SystemParams(delta_omega=2.0, g=1e-9)))
    assert c.kind == "odd_odd" and (c.numerator, c.denominator) == (1, 1)
    assert lossless_peak_bound(c) == pytest.approx(0.0, abs=1e-12)


def test_peak_bound_rejects_other_kinds():
    with pytest.raises(ValueError):
        lossless_peak_bound(classify_n(derive(ratio_params(4.0))))


def test_odd_odd_low_fidelity_with_tiny_loss():
    p = SystemParams(delta_omega=2.0, g=2.0, kappa=1e-5, gamma=1e-5)
    s = occupations_series(p, time_grid(100.0, 100_000))
    m = transfer_metrics(s, 0.0)
    assert m.fidelity <= 0.75 + 0.01
