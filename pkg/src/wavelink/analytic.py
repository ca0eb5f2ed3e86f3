"""Closed-form occupation probabilities for the waveguide link.

All evaluators are vectorized over time and accept arbitrary sorted grids;
`time_grid` is just a uniform-grid convenience.  The lossy expressions are
evaluated with the decay envelopes folded into the hyperbolic terms, so no
intermediate overflows occur even when phi*t is large: the per-eigenmode
exponents -(kappa+gamma)/4 +- phi are always <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import DerivedParams, SystemParams, derive


class GridError(ValueError):
    """Empty or non-monotone time grid."""


class ModelDomainError(ValueError):
    """Evaluator called outside its validity domain."""


@dataclass(frozen=True)
class OccupationTriple:
    """Occupations (P_A, P_WG, P_B) at one instant."""

    p_a: float
    p_wg: float
    p_b: float

    @property
    def total(self) -> float:
        return self.p_a + self.p_wg + self.p_b


@dataclass(frozen=True)
class EnvelopeCoefficients:
    """Slow coefficients A(t), B(t) multiplying the detuning oscillation."""

    a_t: float
    b_t: float


@dataclass(frozen=True)
class TimeSeries:
    """Occupations of the three excited basis states on a time grid."""

    t: np.ndarray
    p_a: np.ndarray
    p_wg: np.ndarray
    p_b: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def triple(self, i: int) -> OccupationTriple:
        return OccupationTriple(float(self.p_a[i]), float(self.p_wg[i]), float(self.p_b[i]))

    @property
    def total(self) -> np.ndarray:
        return self.p_a + self.p_wg + self.p_b


def time_grid(t_max: float, n: int) -> np.ndarray:
    """Uniform grid of n points on [0, t_max]."""
    if n < 1 or t_max <= 0:
        raise GridError(f"need n >= 1 and t_max > 0, got n={n}, t_max={t_max}")
    return np.linspace(0.0, t_max, n)


def _check_grid(t: np.ndarray) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.size == 0:
        raise GridError("empty time grid")
    if t[0] < 0:
        raise GridError(f"grid starts at negative time {t[0]}")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise GridError("time grid must be strictly increasing")
    return t


def lossless_occupations(t, d: DerivedParams):
    """Occupations of the lossless system (kappa = gamma = 0).

    P_A and P_B differ only in the sign of the cross terms; the triple sums
    to exactly 1 up to rounding.
    """
    if not d.lossless:
        raise ModelDomainError("lossless_occupations requires kappa = gamma = 0")
    t = np.asarray(t, dtype=float)
    th, dl = d.theta, d.delta
    if th == 0.0:
        # g = 0 and resonant: nothing moves.
        one, zero = np.ones_like(t), np.zeros_like(t)
        return one, zero, zero
    r = dl / th
    ct, st = np.cos(th * t), np.sin(th * t)
    cd, sd = np.cos(dl * t), np.sin(dl * t)
    cross = 2.0 * ct * cd + 2.0 * r * st * sd
    base = 1.0 + ct**2 + r**2 * st**2
    p_a = 0.25 * (base + cross)
    p_b = 0.25 * (base - cross)
    p_wg = 0.5 * (d.Omega / th) ** 2 * st**2
    return p_a, p_wg, p_b


def envelope_coefficients(t, d: DerivedParams):
    """A(t), B(t): hyperbolic/trigonometric envelope coefficients.

    A(0) = 1, B(0) = 0.  Evaluated literally; the occupation evaluators use
    an overflow-safe scaled form instead.
    """
    t = np.asarray(t, dtype=float)
    ct, st = np.cos(d.theta * t), np.sin(d.theta * t)
    ch, sh = np.cosh(d.phi * t), np.sinh(d.phi * t)
    a_t = ct * ch - d.a * ct * sh - d.b * st * ch
    b_t = -st * sh + d.a * st * ch - d.b * ct * sh
    return a_t, b_t


def lossy_occupations(t, d: DerivedParams):
    """Occupations of the lossy system at arbitrary times.

    Reduces to `lossless_occupations` when kappa = gamma = 0.  The total
    occupation is the squared norm of the no-jump wave function, hence
    non-increasing in t.
    """
    t = np.asarray(t, dtype=float)
    ct, st = np.cos(d.theta * t), np.sin(d.theta * t)
    cd, sd = np.cos(d.delta * t), np.sin(d.delta * t)
    # f+- = exp(-(kappa+gamma) t/4 +- phi t); |phi| <= (kappa+gamma)/4 keeps both <= 1.
    lam = (d.kappa + d.gamma) / 4.0
    fp = np.exp((-lam + d.phi) * t)
    fm = np.exp((-lam - d.phi) * t)
    # h* carry the e^{-(kappa+gamma)t/4} envelope folded into cosh/sinh of phi t.
    p_comp = ct - d.b * st   # cosh coefficient of A
    q_comp = d.a * ct        # sinh coefficient of A
    r_comp = d.a * st        # cosh coefficient of B
    s_comp = st + d.b * ct   # sinh coefficient of B
    h_a = 0.5 * (fp * (p_comp - q_comp) + fm * (p_comp + q_comp))
    h_b = 0.5 * (fp * (r_comp - s_comp) + fm * (r_comp + s_comp))
    g_env = np.exp(-0.5 * d.gamma * t)
    cross = 2.0 * g_env * (h_a * cd + h_b * sd)
    sq = h_a**2 + h_b**2
    p_a = 0.25 * (g_env**2 + cross + sq)
    p_b = 0.25 * (g_env**2 - cross + sq)
    mod2 = d.theta**2 + d.phi**2
    if mod2 == 0.0:
        # theta' = 0: sin(theta' t)/theta' -> t.
        p_wg = 0.5 * d.Omega**2 * t**2 * np.exp(-2.0 * lam * t)
    else:
        ch_env = 0.5 * (fp + fm)
        sh_env = 0.5 * (fp - fm)
        p_wg = 0.5 * d.Omega**2 / mod2 * (st**2 * ch_env**2 + ct**2 * sh_env**2)
    return p_a, p_wg, p_b


def occupations_series(p: SystemParams, grid, model: str = "lossy") -> TimeSeries:
    """Evaluate a closed-form model on a time grid.

    model "lossless" requires kappa = gamma = 0; "lossy" is the general
    expression and is valid everywhere.
    """
    t = _check_grid(grid)
    d = derive(p)
    if model == "lossless":
        if not p.lossless:
            raise ModelDomainError("lossless model requires kappa = gamma = 0")
        p_a, p_wg, p_b = lossless_occupations(t, d)
    elif model == "lossy":
        p_a, p_wg, p_b = lossy_occupations(t, d)
    else:
        raise ModelDomainError(f"unknown model {model!r}")
    return TimeSeries(t=t, p_a=np.atleast_1d(p_a), p_wg=np.atleast_1d(p_wg), p_b=np.atleast_1d(p_b))
