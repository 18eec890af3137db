"""Brute-force dephasing dynamics in a truncated Fock space.

A qubit coupled to a few discrete bosonic modes through

    H = (omega0/2) sigma_3 + sum_k w_k b_k^dag b_k
        + sigma_3 sum_k g_k (b_k^dag + b_k)

is diagonalized exactly (per sigma_3 sector, where H reduces to a pure
bath operator plus a scalar) and the coherence <sigma_+(t)> is evaluated
as a Heisenberg-picture trace.  No closed-form dephasing result enters
anywhere, which makes this module an independent check on the analytic
trajectory machinery.

Couplings g_k are real here; the analytic side depends on |g_k|^2 only,
so this loses no generality for verification purposes.

Composite ordering is qubit (x) bath with the qubit component first,
matching the canonical (top, bottom) = (|1>, |0>) convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import NamedTuple, Sequence

import numpy as np

from .preparation import PreparationScheme, Selective, scheme_operators

__all__ = [
    "FockMode",
    "FockSystem",
    "CompositeDensityMatrix",
    "TruncationError",
    "build_equilibrium",
    "apply_preparation",
    "coherence_exact",
    "coherence_series",
    "sigma_z_expectation",
]

_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10


class TruncationError(ValueError):
    """The per-mode Fock truncation is too small for the requested temperature."""


class FockMode(NamedTuple):
    omega: float  # mode frequency, units of omega_c
    g: float  # real coupling constant
    n_max: int  # highest Fock level kept for this mode


def _lowering(n_max: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, n_max + 1.0)), k=1)


def _kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, mats)


class FockSystem:
    """Truncated composite Hilbert space for the dephasing Hamiltonian."""

    def __init__(self, modes: Sequence[FockMode], omega0: float):
        parsed = []
        for k, mode in enumerate(modes):
            omega, g, n_max = float(mode[0]), float(mode[1]), int(mode[2])
            if not (omega > 0.0 and math.isfinite(omega)):
                raise ValueError(f"mode {k}: omega must be > 0, got {omega!r}")
            if not math.isfinite(g):
                raise ValueError(f"mode {k}: coupling must be finite, got {g!r}")
            if n_max < 1:
                raise ValueError(f"mode {k}: n_max must be >= 1, got {n_max!r}")
            parsed.append(FockMode(omega, g, n_max))
        if not parsed:
            raise ValueError("at least one mode is required")
        self.modes: tuple[FockMode, ...] = tuple(parsed)
        self.omega0 = float(omega0)
        self.bath_dim = int(np.prod([m.n_max + 1 for m in self.modes]))
        self.dim = 2 * self.bath_dim

    def lowering_operator(self, k: int) -> np.ndarray:
        """b_k on the full bath space."""
        mats = [np.eye(m.n_max + 1) for m in self.modes]
        mats[k] = _lowering(self.modes[k].n_max)
        return _kron_all(mats)

    @cached_property
    def _number_sum(self) -> np.ndarray:
        h = np.zeros((self.bath_dim, self.bath_dim))
        for k, mode in enumerate(self.modes):
            b = self.lowering_operator(k)
            h += mode.omega * (b.T @ b)
        return h

    @cached_property
    def _coupling_sum(self) -> np.ndarray:
        v = np.zeros((self.bath_dim, self.bath_dim))
        for k, mode in enumerate(self.modes):
            b = self.lowering_operator(k)
            v += mode.g * (b.T + b)
        return v

    def bath_hamiltonian(self, sign: int) -> np.ndarray:
        """H_B^(+-) = sum w b^dag b +- sum g (b^dag + b)."""
        if sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        return self._number_sum + sign * self._coupling_sum

    def hamiltonian(self) -> np.ndarray:
        """Full composite Hamiltonian, block diagonal in the sigma_3 basis."""
        h = np.zeros((self.dim, self.dim))
        nb = self.bath_dim
        h[:nb, :nb] = 0.5 * self.omega0 * np.eye(nb) + self.bath_hamiltonian(+1)
        h[nb:, nb:] = -0.5 * self.omega0 * np.eye(nb) + self.bath_hamiltonian(-1)
        return h

    @cached_property
    def sector_eigensystems(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(vals_plus, vecs_plus, vals_minus, vecs_minus) of H_B^(+-)."""
        vals_p, vecs_p = np.linalg.eigh(self.bath_hamiltonian(+1))
        vals_m, vecs_m = np.linalg.eigh(self.bath_hamiltonian(-1))
        return vals_p, vecs_p, vals_m, vecs_m

    @cached_property
    def _sector_overlap(self) -> np.ndarray:
        """W = V_+^dag V_- between the two sector eigenbases."""
        _, vecs_p, _, vecs_m = self.sector_eigensystems
        return vecs_p.T @ vecs_m

    def propagator(self, t: float) -> np.ndarray:
        """exp(-i H t) on the composite space."""
        vals_p, vecs_p, vals_m, vecs_m = self.sector_eigensystems
        u = np.zeros((self.dim, self.dim), dtype=complex)
        nb = self.bath_dim
        phase_p = np.exp(-1j * (vals_p + 0.5 * self.omega0) * t)
        phase_m = np.exp(-1j * (vals_m - 0.5 * self.omega0) * t)
        u[:nb, :nb] = (vecs_p * phase_p) @ vecs_p.T
        u[nb:, nb:] = (vecs_m * phase_m) @ vecs_m.T
        return u

    def check_truncation(self, beta: float) -> None:
        """Require n_max >= 10*nbar + 10 for every mode at this temperature."""
        for k, mode in enumerate(self.modes):
            x = beta * mode.omega
            nbar = 0.0 if x > 50.0 else 1.0 / math.expm1(x)
            needed = 10.0 * nbar + 10.0
            if mode.n_max < needed:
                raise TruncationError(
                    f"mode {k}: n_max = {mode.n_max} below the thermal adequacy"
                    f" bound {needed:.1f} (mean occupation {nbar:.3f})"
                )


@dataclass(frozen=True)
class CompositeDensityMatrix:
    """Dense density matrix on the composite qubit (x) bath space."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if abs(np.trace(m).real - 1.0) > _TRACE_TOL or abs(np.trace(m).imag) > _TRACE_TOL:
            raise ValueError(f"trace must be 1, got {np.trace(m)!r}")
        if np.max(np.abs(m - m.conj().T)) > _HERM_TOL:
            raise ValueError("density matrix must be Hermitian")
        object.__setattr__(self, "matrix", m)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def qubit_block(self, i: int, j: int) -> np.ndarray:
        """Bath-space block <i| rho |j> with qubit labels in {1, 0}."""
        nb = self.matrix.shape[0] // 2
        row = slice(0, nb) if i == 1 else slice(nb, 2 * nb)
        col = slice(0, nb) if j == 1 else slice(nb, 2 * nb)
        return self.matrix[row, col]


def build_equilibrium(fs: FockSystem, beta: float) -> CompositeDensityMatrix:
    """Normalized exp(-beta H) built blockwise from the sector spectra.

    beta is in cutoff units (beta * omega_c).  Raises TruncationError
    when the per-mode truncation cannot hold the thermal occupation.
    """
    beta = float(beta)
    if not (beta > 0.0 and math.isfinite(beta)):
        raise ValueError(f"beta must be finite and > 0, got {beta!r}")
    fs.check_truncation(beta)
    vals_p, vecs_p, vals_m, vecs_m = fs.sector_eigensystems
    e_p = vals_p + 0.5 * fs.omega0
    e_m = vals_m - 0.5 * fs.omega0
    # shift by the global ground energy before exponentiating
    e0 = min(e_p.min(), e_m.min())
    w_p = np.exp(-beta * (e_p - e0))
    w_m = np.exp(-beta * (e_m - e0))
    z = w_p.sum() + w_m.sum()
    nb = fs.bath_dim
    rho = np.zeros((fs.dim, fs.dim))
    rho[:nb, :nb] = (vecs_p * (w_p / z)) @ vecs_p.T
    rho[nb:, nb:] = (vecs_m * (w_m / z)) @ vecs_m.T
    return CompositeDensityMatrix(rho.astype(complex))


def apply_preparation(
    rho: CompositeDensityMatrix, s: PreparationScheme
) -> CompositeDensityMatrix:
    """State after the measurement: sum_m (Omega_m x I) rho (Omega_m x I)^dag.

    Non-selective schemes preserve the trace automatically; selective
    output is renormalized and a zero-probability outcome is an error.
    """
    nb = rho.matrix.shape[0] // 2
    blocks = [[rho.qubit_block(i, j) for j in (1, 0)] for i in (1, 0)]
    out = np.zeros_like(rho.matrix)
    for _, omega in scheme_operators(s):
        # (q x I) rho (q x I)^dag expands into scalar-weighted block sums
        for i in range(2):
            for j in range(2):
                acc = np.zeros((nb, nb), dtype=complex)
                for k in range(2):
                    for l in range(2):
                        coeff = omega[i, k] * np.conj(omega[j, l])
                        if coeff != 0.0:
                            acc += coeff * blocks[k][l]
                out[
                    i * nb : (i + 1) * nb, j * nb : (j + 1) * nb
                ] += acc
    tr = np.trace(out).real
    if isinstance(s, Selective):
        if tr < 1e-14:
            raise ValueError(
                "selective outcome has zero probability for this state"
            )
        out = out / tr
    return CompositeDensityMatrix(out)


def coherence_series(
    fs: FockSystem, rho0: CompositeDensityMatrix, times: Sequence[float]
) -> np.ndarray:
    """<sigma_+(t)> = Tr{e^{iHt} (sigma_+ x I) e^{-iHt} rho0} on a time grid.

    Reduces to Tr{U_+^dag U_- rho_01} over the coherence block, evaluated
    in the cached sector eigenbases so a whole series costs one pair of
    basis rotations plus O(dim^2) per time.
    """
    vals_p, vecs_p, vals_m, vecs_m = fs.sector_eigensystems
    rho01 = rho0.qubit_block(0, 1)
    m = vecs_m.T @ rho01 @ vecs_p
    c = fs._sector_overlap * m.T
    t = np.asarray(times, dtype=float)
    out = np.empty(t.shape, dtype=complex)
    for i, ti in enumerate(t):
        u = np.exp(1j * vals_p * ti)
        w = np.exp(-1j * vals_m * ti)
        out[i] = np.exp(1j * fs.omega0 * ti) * (u @ (c @ w))
    return out


def coherence_exact(
    fs: FockSystem, rho0: CompositeDensityMatrix, t: float
) -> complex:
    """Single-time version of `coherence_series`."""
    return complex(coherence_series(fs, rho0, [float(t)])[0])


def sigma_z_expectation(rho: CompositeDensityMatrix) -> float:
    """Tr{(sigma_3 x I) rho} = Tr rho_11 - Tr rho_00."""
    return float(
        np.trace(rho.qubit_block(1, 1)).real - np.trace(rho.qubit_block(0, 0)).real
    )
