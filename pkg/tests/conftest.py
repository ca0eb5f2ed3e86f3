"""Shared fixtures and parameter generators for the test suite."""

import math

import numpy as np
import pytest

from wavelink.params import SystemParams

TWO_PI = 2.0 * math.pi


def reference_point() -> SystemParams:
    """The reference time-series operating point (detuning 500 MHz,
    g 1.1 GHz, kappa 3 MHz, gamma 2 MHz) in rad/ns."""
    return SystemParams(
        delta_omega=0.5 * TWO_PI, g=1.1 * TWO_PI, kappa=0.003 * TWO_PI, gamma=0.002 * TWO_PI
    )


def random_params(rng: np.random.Generator, small_loss: bool = False) -> SystemParams:
    """A random valid parameter set at GHz-like angular-rate scales."""
    g = rng.uniform(0.05, 2.0)
    dw = rng.uniform(0.0, 2.0)
    if small_loss:
        kappa, gamma = rng.uniform(0.0, 0.1 * g, size=2)
    else:
        kappa, gamma = rng.uniform(0.0, 1.0, size=2)
    return SystemParams(omega_q=rng.uniform(0.0, 10.0), delta_omega=dw, g=g, kappa=kappa, gamma=gamma)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260823)
