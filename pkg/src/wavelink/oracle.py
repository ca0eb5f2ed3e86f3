"""Independent numerical ground truth for the closed-form dynamics.

Two routes are provided: a fixed-step RK4 integration of the full Lindblad
master equation on the 4-dimensional reachable space, and a biorthogonal
spectral propagation under the non-Hermitian effective Hamiltonian.  Both
are consumed by the test suite to cross-validate the analytic module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import TimeSeries, _check_grid
from .params import SystemParams, derive


class IntegrationError(RuntimeError):
    """Step-size refinement failed to reach the self-consistency target."""


class DegeneracyError(ValueError):
    """Biorthogonal eigensystem is (numerically) defective."""


class RangeError(ValueError):
    """Query time outside the covered series."""


# Basis order used throughout: |0,0,0>, |1,0,0>, |0,1,0>, |0,0,1>.
_GROUND, _A, _WG, _B = 0, 1, 2, 3


def hamiltonian4(p: SystemParams) -> np.ndarray:
    """Hermitian Hamiltonian restricted to the reachable 4-dim space."""
    w_wg = p.omega_q + p.delta_omega
    H = np.zeros((4, 4), dtype=complex)
    H[_A, _A] = p.omega_q
    H[_WG, _WG] = w_wg
    H[_B, _B] = p.omega_q
    H[_A, _WG] = H[_WG, _A] = p.g
    H[_B, _WG] = H[_WG, _B] = p.g
    return H


def collapse_operators(p: SystemParams) -> list[np.ndarray]:
    """Collapse operators sqrt(gamma) sigma-_A, sqrt(gamma) sigma-_B, sqrt(kappa) a."""
    ops = []
    for idx, rate in ((_A, p.gamma), (_B, p.gamma), (_WG, p.kappa)):
        L = np.zeros((4, 4), dtype=complex)
        L[_GROUND, idx] = np.sqrt(rate)
        ops.append(L)
    return ops


def _liouvillian(p: SystemParams) -> np.ndarray:
    """Superoperator L with d vec(rho)/dt = L vec(rho) (column stacking)."""
    H = hamiltonian4(p)
    eye = np.eye(4)
    sup = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for L in collapse_operators(p):
        LdL = L.conj().T @ L
        sup += np.kron(L.conj(), L)
        sup -= 0.5 * (np.kron(eye, LdL) + np.kron(LdL.T, eye))
    return sup


def _rk4_step_matrix(sup: np.ndarray, dt: float) -> np.ndarray:
    """One-step RK4 map for the linear system, i.e. the degree-4 Taylor
    polynomial of expm(sup*dt)."""
    M = np.eye(sup.shape[0], dtype=complex)
    term = np.eye(sup.shape[0], dtype=complex)
    for k in range(1, 5):
        term = term @ (sup * dt) / k
        M = M + term
    return M


def lindblad_density_matrices(
    p: SystemParams, grid, substeps: int | None = None, target: float = 1e-9
) -> np.ndarray:
    """Integrate the Lindblad equation from rho(0) = |1,0,0><1,0,0|.

    Returns rho at every grid point, shape (n, 4, 4).  When `substeps` is
    None the number of RK4 substeps per grid interval is doubled until the
    reported populations change by less than `target`; a fixed `substeps`
    disables refinement (used by the convergence-order test).
    """
    t = _check_grid(grid)
    dts = np.diff(t)
    if dts.size and not np.allclose(dts, dts[0], rtol=1e-9, atol=0.0):
        raise IntegrationError("lindblad_evolve requires a uniform grid")
    sup = _liouvillian(p)
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[_A, _A] = 1.0
    if t[0] != 0.0:
        raise IntegrationError("grid must start at t = 0")
    if dts.size == 0:
        return rho0[None, :, :]
    dt_out = float(dts[0])

    def run(m: int) -> np.ndarray:
        step = np.linalg.matrix_power(_rk4_step_matrix(sup, dt_out / m), m)
        rhos = np.empty((t.size, 16), dtype=complex)
        v = rho0.reshape(16, order="F")
        rhos[0] = v
        for i in range(1, t.size):
            v = step @ v
            rhos[i] = v
        # undo the column-stacked vec
        return rhos.reshape(t.size, 4, 4).swapaxes(1, 2)

    def pops(rhos: np.ndarray) -> np.ndarray:
        return np.real(np.einsum("nii->ni", rhos))

    if substeps is not None:
        return run(substeps)
    m = 1
    prev = run(m)
    for _ in range(22):
        m *= 2
        cur = run(m)
        if np.max(np.abs(pops(cur) - pops(prev))) < target:
            return cur
        prev = cur
    raise IntegrationError(
        f"RK4 refinement did not reach {target:g}; achieved "
        f"{np.max(np.abs(pops(cur) - pops(prev))):.3e} at {m} substeps/interval"
    )


def lindblad_evolve(p: SystemParams, grid, substeps: int | None = None) -> TimeSeries:
    """Excited-state populations from the full Lindblad master equation."""
    t = _check_grid(grid)
    rhos = lindblad_density_matrices(p, t, substeps=substeps)
    diag = np.real(np.einsum("nii->ni", rhos))
    return TimeSeries(t=t, p_a=diag[:, _A], p_wg=diag[:, _WG], p_b=diag[:, _B])


def effective_hamiltonian3(p: SystemParams) -> np.ndarray:
    """Non-Hermitian H - (i/2) sum L^dag L on {|1,0,0>, |0,1,0>, |0,0,1>}."""
    w_wg = p.omega_q + p.delta_omega
    return np.array(
        [
            [p.omega_q - 0.5j * p.gamma, p.g, 0.0],
            [p.g, w_wg - 0.5j * p.kappa, p.g],
            [0.0, p.g, p.omega_q - 0.5j * p.gamma],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class BiorthogonalEigensystem:
    """Closed-form eigensystem of the single-excitation effective Hamiltonian.

    `right` holds |lambda_n^R> as columns; `left` holds <lambda_n^L| as rows
    (no conjugation: the matrix is complex symmetric).  norm_products are
    N^L N^R for the +/- pair.
    """

    eigenvalues: np.ndarray      # (3,) order: lambda_0, lambda_+, lambda_-
    right: np.ndarray            # (3, 3)
    left: np.ndarray             # (3, 3)
    norm_products: np.ndarray    # (2,) for the +/- pair


def biorthogonal_eigensystem(p: SystemParams, overlap_floor: float = 1e-8) -> BiorthogonalEigensystem:
    """Eigenvalues and biorthonormal left/right eigenvectors of H_eff."""
    d = derive(p)
    z = complex(d.delta, d.Gamma)
    tp = d.theta_c
    lam0 = p.omega_q - 0.5j * p.gamma
    lam_p = p.omega_q + d.delta - 0.25j * (p.gamma + p.kappa) + tp
    lam_m = p.omega_q + d.delta - 0.25j * (p.gamma + p.kappa) - tp
    if d.Omega == 0.0:
        raise DegeneracyError("g = 0: closed-form eigenvectors are undefined")
    overlaps = []
    for sign, lam in ((+1.0, lam_p), (-1.0, lam_m)):
        ov = 4.0 * tp * (tp + sign * z) / d.Omega**2  # <u^L|u^R> before normalization
        if abs(ov) < overlap_floor:
            raise DegeneracyError(
                f"exceptional point: eigenvalues {lam0}, {lam_p}, {lam_m} "
                f"(left/right overlap {abs(ov):.2e})"
            )
        overlaps.append(ov)
    s2 = np.sqrt(2.0)
    right = np.zeros((3, 3), dtype=complex)
    left = np.zeros((3, 3), dtype=complex)
    right[:, 0] = np.array([1.0, 0.0, -1.0]) / s2
    left[0, :] = np.array([1.0, 0.0, -1.0]) / s2
    norm_products = np.empty(2, dtype=complex)
    for j, sign in enumerate((+1.0, -1.0)):
        u = np.array([1.0, s2 * (z + sign * tp) / d.Omega, 1.0], dtype=complex)
        n = 1.0 / np.sqrt(overlaps[j])  # split N^L N^R symmetrically
        right[:, j + 1] = n * u
        left[j + 1, :] = n * u
        norm_products[j] = d.Omega**2 / (4.0 * tp * (tp + sign * z))
    return BiorthogonalEigensystem(
        eigenvalues=np.array([lam0, lam_p, lam_m]),
        right=right,
        left=left,
        norm_products=norm_products,
    )


def effective_propagate(p: SystemParams, grid) -> TimeSeries:
    """Evolve |1,0,0> under e^{-i H_eff t} via the spectral decomposition."""
    t = _check_grid(grid)
    eig = biorthogonal_eigensystem(p)
    psi0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    weights = eig.left @ psi0                                   # <lambda^L_n|psi(0)>
    phases = np.exp(-1j * np.outer(t, eig.eigenvalues))         # (n_t, 3)
    psi = (phases * weights) @ eig.right.T                      # (n_t, 3)
    prob = np.abs(psi) ** 2
    return TimeSeries(t=t, p_a=prob[:, 0], p_wg=prob[:, 1], p_b=prob[:, 2])


def jump_probability(t: float, series: TimeSeries, p: SystemParams) -> float:
    """Instantaneous photon-emission rate gamma*(P_A+P_B) + kappa*P_WG."""
    if t < series.t[0] or t > series.t[-1]:
        raise RangeError(f"t = {t} outside series range [{series.t[0]}, {series.t[-1]}]")
    p_a = float(np.interp(t, series.t, series.p_a))
    p_wg = float(np.interp(t, series.t, series.p_wg))
    p_b = float(np.interp(t, series.t, series.p_b))
    return p.gamma * (p_a + p_b) + p.kappa * p_wg


def block_hamiltonian(k: int, p: SystemParams) -> np.ndarray:
    """Effective-Hamiltonian block on {|1,k,0>, |0,k+1,0>, |0,k,1>}."""
    if k < 0:
        raise ValueError(f"excitation index must be >= 0, got {k}")
    w_wg = p.omega_q + p.delta_omega
    gk = np.sqrt(k + 1.0) * p.g
    return np.array(
        [
            [p.omega_q - 0.5j * p.gamma, gk, 0.0],
            [gk, (k + 1) * (w_wg - 0.5j * p.kappa), gk],
            [0.0, gk, p.omega_q - 0.5j * p.gamma],
        ],
        dtype=complex,
    )


def assembled_effective_hamiltonian(n_blocks: int, p: SystemParams) -> np.ndarray:
    """H_eff built from the tensor-product operators, restricted to the
    excitation-ordered basis [|1,k,0>, |0,k+1,0>, |0,k,1>] for k < n_blocks.

    Inter-block entries vanish identically because the rotating-wave
    coupling conserves total excitation number.
    """
    if n_blocks < 1:
        raise ValueError("need at least one block")
    n_ph = n_blocks + 1  # photon numbers 0 .. n_blocks
    dim = 2 * n_ph * 2
    w_wg = p.omega_q + p.delta_omega

    def idx(na: int, n: int, nb: int) -> int:
        return (na * n_ph + n) * 2 + nb

    H = np.zeros((dim, dim), dtype=complex)
    for na in range(2):
        for n in range(n_ph):
            for nb in range(2):
                i = idx(na, n, nb)
                H[i, i] = (
                    (na + nb) * (p.omega_q - 0.5j * p.gamma)
                    + n * (w_wg - 0.5j * p.kappa)
                )
                # sigma_A^+ a  and its transpose
                if na == 0 and n > 0:
                    H[idx(1, n - 1, nb), i] += p.g * np.sqrt(n)
                    H[i, idx(1, n - 1, nb)] += p.g * np.sqrt(n)
                if nb == 0 and n > 0:
                    H[idx(na, n - 1, 1), i] += p.g * np.sqrt(n)
                    H[i, idx(na, n - 1, 1)] += p.g * np.sqrt(n)
    order = []
    for k in range(n_blocks):
        order += [idx(1, k, 0), idx(0, k + 1, 0), idx(0, k, 1)]
    return H[np.ix_(order, order)]
