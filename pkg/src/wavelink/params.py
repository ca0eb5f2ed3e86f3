"""Physical parameters and the derived constants used by the closed forms.

Unit convention: every rate is an angular frequency in rad/ns.  Quoted
frequencies are ordinary (Hz-family) frequencies, so "1GHz" parses to
2*pi rad/ns.  This is what reproduces the reference operating points
(e.g. the eta = 1e7 latency of 1.904 ns); a 1:1 mapping does not.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass


class ParameterError(ValueError):
    """Invalid physical parameters (negative rates, non-finite values)."""


class RateParseError(ValueError):
    """Malformed unit-suffixed rate string."""


# omega = 2*pi*f, expressed in rad/ns.
_TWO_PI = 2.0 * math.pi
_UNIT_SCALE = {"Hz": _TWO_PI * 1e-9, "kHz": _TWO_PI * 1e-6, "MHz": _TWO_PI * 1e-3, "GHz": _TWO_PI}

_RATE_RE = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-z]+)\s*$")


@dataclass(frozen=True)
class SystemParams:
    """User-facing inputs for the two-qubit/waveguide link.

    omega_q enters the dynamics only as a global phase; occupation
    probabilities are independent of it.
    """

    omega_q: float = 0.0        # qubit angular frequency (rad/ns)
    delta_omega: float = 0.0    # detuning omega_WG - omega_q (rad/ns)
    g: float = 0.0              # qubit-waveguide coupling (rad/ns)
    kappa: float = 0.0          # waveguide decay rate (rad/ns)
    gamma: float = 0.0          # qubit decay rate (rad/ns)

    def __post_init__(self):
        for name in ("omega_q", "delta_omega", "g", "kappa", "gamma"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ParameterError(f"{name} must be finite, got {v!r}")
        for name in ("g", "kappa", "gamma"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")

    @property
    def lossless(self) -> bool:
        return self.kappa == 0.0 and self.gamma == 0.0


@dataclass(frozen=True)
class DerivedParams:
    """Constants feeding every closed-form expression.

    theta_c is the principal square root of Omega^2 + delta^2 - Gamma^2
    + 2i*delta*Gamma, so theta = Re(theta_c) >= 0 and sign(phi) follows
    sign(delta*Gamma).  a + i b = (delta + i Gamma) / theta_c.
    """

    delta: float
    Omega: float
    Gamma: float
    theta_c: complex
    theta: float
    phi: float
    a: float
    b: float
    kappa: float
    gamma: float

    @property
    def lossless(self) -> bool:
        return self.kappa == 0.0 and self.gamma == 0.0


def derive(p: SystemParams) -> DerivedParams:
    """Compute all derived constants for a parameter set.

    Pure function of the inputs; the principal complex square-root branch
    (Re >= 0) is used everywhere, including the overdamped regime
    Gamma^2 > Omega^2 + delta^2.
    """
    delta = p.delta_omega / 2.0
    Omega = math.sqrt(2.0) * p.g
    Gamma = (p.gamma - p.kappa) / 4.0
    theta_c = cmath.sqrt(complex(Omega**2 + delta**2 - Gamma**2, 2.0 * delta * Gamma))
    z = complex(delta, Gamma)
    if theta_c != 0:
        ab = z / theta_c
    else:
        ab = complex(0.0, 0.0)
    return DerivedParams(
        delta=delta,
        Omega=Omega,
        Gamma=Gamma,
        theta_c=theta_c,
        theta=theta_c.real,
        phi=theta_c.imag,
        a=ab.real,
        b=ab.imag,
        kappa=p.kappa,
        gamma=p.gamma,
    )


def theta_phi_radicals(d: DerivedParams) -> tuple[float, float]:
    """Explicit radical forms of theta and phi.

    Cross-check only: the sign prefactor sign(delta*Gamma) is undefined at
    delta*Gamma = 0, where the complex square root remains well defined.
    """
    s = d.Omega**2 + d.delta**2
    r = math.sqrt(max((s + d.Gamma**2) ** 2 - 4.0 * d.Omega**2 * d.Gamma**2, 0.0))
    theta = math.sqrt(max(r + s - d.Gamma**2, 0.0) / 2.0)
    dg = d.delta * d.Gamma
    sign = 0.0 if dg == 0 else math.copysign(1.0, dg)
    phi = sign * math.sqrt(max(r - s + d.Gamma**2, 0.0) / 2.0)
    return theta, phi


def parse_rate(text: str) -> float:
    """Parse a unit-suffixed rate like "500MHz" or "1.1GHz" to rad/ns."""
    m = _RATE_RE.match(text)
    if not m:
        raise RateParseError(f"cannot parse rate {text!r}: expected <number><Hz|kHz|MHz|GHz>")
    mantissa, unit = m.groups()
    if unit not in _UNIT_SCALE:
        raise RateParseError(f"unknown unit {unit!r} in {text!r} (expected Hz, kHz, MHz or GHz)")
    value = float(mantissa)
    if not math.isfinite(value):
        raise RateParseError(f"non-finite mantissa in {text!r}")
    return value * _UNIT_SCALE[unit]
