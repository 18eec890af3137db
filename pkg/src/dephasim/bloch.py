"""Complex two-level (qubit) algebra on the Bloch sphere.

States are column 2-vectors in the canonical basis |1> = (1, 0)^T,
|0> = (0, 1)^T; operators are plain 2x2 complex ndarrays.  Directions on
the sphere are parameterized by Euler angles (theta, phi) with Cartesian
components a1 + i*a2 = sin(theta) e^{i phi} and a3 = cos(theta).

Global phases are physically irrelevant: states should be compared via
their projectors, never via raw amplitudes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA_1",
    "SIGMA_2",
    "SIGMA_3",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "IDENTITY",
    "KET_0",
    "KET_1",
    "BlochDirection",
    "QubitState",
    "state_from_direction",
    "antipodal_direction",
    "direction_unitary",
    "relative_unitary",
    "spin_component",
]

SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# sigma_pm = (sigma_1 +- i sigma_2) / 2; sigma_plus |0> = |1>
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

KET_1 = np.array([1.0, 0.0], dtype=complex)  # excited state, top component
KET_0 = np.array([0.0, 1.0], dtype=complex)  # ground state, bottom component

_NORM_TOL = 1e-12


def _wrap_phi(phi: float) -> float:
    """Reduce an azimuthal angle into (-pi, pi]."""
    phi = math.remainder(phi, 2.0 * math.pi)
    if phi <= -math.pi:
        phi += 2.0 * math.pi
    return phi


@dataclass(frozen=True)
class BlochDirection:
    """Unit vector on the Bloch sphere, given by Euler angles.

    theta is the polar angle and must lie in [0, pi]; phi is the
    azimuthal angle and is normalized into (-pi, pi] on construction.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", _wrap_phi(float(self.phi)))

    @property
    def cartesian(self) -> np.ndarray:
        """Cartesian components (a1, a2, a3) of the unit vector."""
        s = math.sin(self.theta)
        return np.array(
            [s * math.cos(self.phi), s * math.sin(self.phi), math.cos(self.theta)]
        )


@dataclass(frozen=True)
class QubitState:
    """Normalized pure state with amplitudes (c1, c0) = (top, bottom)."""

    c1: complex
    c0: complex

    def __post_init__(self) -> None:
        c1, c0 = complex(self.c1), complex(self.c0)
        norm = abs(c1) ** 2 + abs(c0) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state not normalized: |c1|^2 + |c0|^2 = {norm!r}")
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c0", c0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.c1, self.c0], dtype=complex)

    @property
    def projector(self) -> np.ndarray:
        """Rank-1 density matrix |psi><psi| (the phase-free representation)."""
        v = self.vector
        return np.outer(v, v.conj())


def state_from_direction(d: BlochDirection) -> QubitState:
    """Pure state pointing along d.

    Components are (e^{-i phi/2} cos(theta/2), e^{i phi/2} sin(theta/2)),
    so theta = 0 gives |1> and theta = pi gives |0> up to a global phase.
    """
    half = 0.5 * d.theta
    return QubitState(
        cmath.exp(-0.5j * d.phi) * math.cos(half),
        cmath.exp(0.5j * d.phi) * math.sin(half),
    )


def antipodal_direction(d: BlochDirection) -> BlochDirection:
    """Direction of the orthogonal state: (theta, phi) -> (pi - theta, phi + pi)."""
    return BlochDirection(math.pi - d.theta, d.phi + math.pi)


def direction_unitary(d: BlochDirection) -> np.ndarray:
    """Unitary U(d) mapping the canonical basis onto (|d>, |-d>).

    Columns are U(d)|1> = |d> and U(d)|0> = |-d>, with the phase
    convention fixed by `state_from_direction` and its antipode.
    """
    half = 0.5 * d.theta
    c, s = math.cos(half), math.sin(half)
    em = cmath.exp(-0.5j * d.phi)
    ep = cmath.exp(0.5j * d.phi)
    return np.array(
        [[em * c, -1.0j * em * s], [ep * s, 1.0j * ep * c]], dtype=complex
    )


def relative_unitary(b: BlochDirection, a: BlochDirection) -> np.ndarray:
    """U(b, a) = U(b) U(a)^dagger, carrying |a> to |b>."""
    return direction_unitary(b) @ direction_unitary(a).conj().T


def spin_component(d: BlochDirection) -> np.ndarray:
    """Spin component along d: sigma(d) = a1*s1 + a2*s2 + a3*s3.

    Hermitian, traceless, with eigenvectors |+-d> for eigenvalues +-1.
    """
    a1, a2, a3 = d.cartesian
    return a1 * SIGMA_1 + a2 * SIGMA_2 + a3 * SIGMA_3
