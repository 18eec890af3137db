"""Preparation measurements on a qubit in contact with a thermal bath.

A preparation is either selective (the qubit is projected onto a pure
state and renormalized) or non-selective: a two-outcome von
Neumann-Lueders measurement along a direction `a`, whose outcomes are
rotated into post-measurement states |b1>, |b2>.  Three named special
cases are used throughout:

* scheme i   : b1 = a,  b2 = -a      (undisturbed outcomes)
* scheme ii  : b1 = b,  b2 = -b      (one unitary disturbs both outcomes)
* scheme iii : b1 = b2 = b           (both outcomes collapse onto one state)

Scheme iii' is scheme iii with the azimuth of the second state shifted
by pi, which flips the sign of the correlation decoherence.

The single temperature parameter everywhere is the dimensionless product
beta*omega0 of inverse temperature and qubit splitting.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .bloch import (
    BlochDirection,
    QubitState,
    antipodal_direction,
    state_from_direction,
)

__all__ = [
    "Selective",
    "NonSelectiveGeneral",
    "PreparationScheme",
    "InitialAverages",
    "selective_from_direction",
    "scheme_i",
    "scheme_ii",
    "scheme_iii",
    "scheme_iii_prime",
    "dual_scheme",
    "delta_phi",
    "scheme_operators",
    "initial_averages",
    "enhancement_predicate",
]


@dataclass(frozen=True)
class Selective:
    """Selective preparation: project onto the pure state psi."""

    psi: QubitState


@dataclass(frozen=True)
class NonSelectiveGeneral:
    """Two-outcome non-selective measurement along `a`.

    Effects project onto |a>, |-a>; the measurement operators send those
    outcomes to |b1> and |b2| respectively.
    """

    a: BlochDirection
    b1: BlochDirection
    b2: BlochDirection


PreparationScheme = Union[Selective, NonSelectiveGeneral]


def selective_from_direction(d: BlochDirection) -> Selective:
    """Selective preparation of the pure state pointing along d."""
    return Selective(state_from_direction(d))


def scheme_i(a: BlochDirection) -> NonSelectiveGeneral:
    """Non-selective measurement that leaves both outcomes undisturbed."""
    return NonSelectiveGeneral(a, a, antipodal_direction(a))


def scheme_ii(a: BlochDirection, b: BlochDirection) -> NonSelectiveGeneral:
    """Both outcomes rotated by the same unitary: b1 = b, b2 = -b.

    The Euler angles then satisfy theta1 + theta2 = pi and
    cos(delta_phi) = -1 exactly.
    """
    return NonSelectiveGeneral(a, b, antipodal_direction(b))


def scheme_iii(a: BlochDirection, b: BlochDirection) -> NonSelectiveGeneral:
    """Both outcomes collapse onto the same state b (theta1 = theta2, delta_phi = 0)."""
    return NonSelectiveGeneral(a, b, b)


def scheme_iii_prime(a: BlochDirection, b: BlochDirection) -> NonSelectiveGeneral:
    """Variant of scheme iii with theta1 = theta2 and cos(delta_phi) = -1."""
    return NonSelectiveGeneral(a, b, BlochDirection(b.theta, b.phi + math.pi))


def dual_scheme(s: NonSelectiveGeneral) -> NonSelectiveGeneral:
    """Dual measurement: swap the roles of the effects and Omega*Omega^dagger.

    Exists only when a single unitary disturbs all outcomes, i.e. when
    b2 = -b1 (schemes i and ii).  Scheme iii has no dual.
    """
    anti = antipodal_direction(s.b1)
    if (
        abs(anti.theta - s.b2.theta) > 1e-12
        or abs(math.sin(anti.phi - s.b2.phi)) > 1e-12
        or math.cos(anti.phi - s.b2.phi) < 0.0
    ):
        raise ValueError("dual scheme exists only when b2 is antipodal to b1")
    return NonSelectiveGeneral(s.b1, s.a, antipodal_direction(s.a))


def delta_phi(s: NonSelectiveGeneral) -> float:
    """Azimuthal difference phi_1 - phi_2 of the post-measurement states."""
    return s.b1.phi - s.b2.phi


def scheme_operators(s: PreparationScheme) -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-outcome pairs (effect F_m, measurement operator Omega_m).

    The effects resolve the identity, sum_m F_m = I.  For a selective
    preparation the single pair is (P_psi, P_psi).
    """
    if isinstance(s, Selective):
        p = s.psi.projector
        return [(p, p)]
    ket_a = state_from_direction(s.a).vector
    ket_ma = state_from_direction(antipodal_direction(s.a)).vector
    ket_b1 = state_from_direction(s.b1).vector
    ket_b2 = state_from_direction(s.b2).vector
    f1 = np.outer(ket_a, ket_a.conj())
    f2 = np.outer(ket_ma, ket_ma.conj())
    omega1 = np.outer(ket_b1, ket_a.conj())
    omega2 = np.outer(ket_b2, ket_ma.conj())
    return [(f1, omega1), (f2, omega2)]


@dataclass(frozen=True)
class InitialAverages:
    """Qubit expectation values right after the preparation.

    sigma_plus is <sigma_+> at t = 0; <sigma_-> is its conjugate and is
    exposed as a property so the pair cannot get out of sync.
    """

    sigma_plus: complex
    sigma_z: float

    def __post_init__(self) -> None:
        r2 = 4.0 * abs(self.sigma_plus) ** 2 + self.sigma_z**2
        if r2 > 1.0 + 1e-12:
            raise ValueError(f"averages outside the Bloch ball: v^2 = {r2!r}")

    @property
    def sigma_minus(self) -> complex:
        return complex(self.sigma_plus).conjugate()

    @property
    def bloch_magnitude(self) -> float:
        return math.sqrt(min(4.0 * abs(self.sigma_plus) ** 2 + self.sigma_z**2, 1.0))


def _check_beta_omega0(beta_omega0: float) -> float:
    beta_omega0 = float(beta_omega0)
    if not (beta_omega0 > 0.0 and math.isfinite(beta_omega0)):
        raise ValueError(
            f"beta_omega0 must be finite and > 0, got {beta_omega0!r}; the"
            " infinite-temperature limit makes the post-measurement averages"
            " vanish and the correlation decoherence singular"
        )
    return beta_omega0


def initial_averages(s: PreparationScheme, beta_omega0: float) -> InitialAverages:
    """Post-measurement averages <sigma_+-> and <sigma_3> at t = 0.

    For a selective preparation these are the pure-state expectations;
    for non-selective schemes they carry the thermal weights of the two
    measurement outcomes and generally depend on beta*omega0.
    """
    beta_omega0 = _check_beta_omega0(beta_omega0)
    if isinstance(s, Selective):
        c1, c0 = s.psi.c1, s.psi.c0
        return InitialAverages(
            sigma_plus=c1.conjugate() * c0,
            sigma_z=abs(c1) ** 2 - abs(c0) ** 2,
        )
    x = 0.5 * beta_omega0
    sa2 = math.sin(0.5 * s.a.theta) ** 2
    ca2 = math.cos(0.5 * s.a.theta) ** 2
    ex, emx = math.exp(x), math.exp(-x)
    hot = ex * sa2 + emx * ca2  # weight of the |a> outcome
    cold = ex * ca2 + emx * sa2  # weight of the |-a> outcome
    two_cosh = ex + emx
    dphi = delta_phi(s)
    sigma_plus = (
        cmath.exp(1.0j * s.b1.phi)
        * (
            math.sin(s.b1.theta) * hot
            + cmath.exp(-1.0j * dphi) * math.sin(s.b2.theta) * cold
        )
        / (2.0 * two_cosh)
    )
    sigma_z = (
        math.cos(s.b1.theta) * hot + math.cos(s.b2.theta) * cold
    ) / two_cosh
    return InitialAverages(sigma_plus=sigma_plus, sigma_z=sigma_z)


def enhancement_predicate(s: PreparationScheme, beta_omega0: float) -> bool:
    """Sufficient condition for coherence enhancement at all times.

    True iff sin(delta_phi) = 0 (within 1e-12) and N1^2 > D^2, in which
    case the correlation decoherence is guaranteed non-positive for
    every time.  Undefined for selective preparations.
    """
    if isinstance(s, Selective):
        raise ValueError("enhancement predicate is undefined for selective schemes")
    beta_omega0 = _check_beta_omega0(beta_omega0)
    if abs(math.sin(delta_phi(s))) > 1e-12:
        return False
    from .dynamics import scheme_kernel_params

    p = scheme_kernel_params(s, beta_omega0)
    return p.n1**2 > p.d**2
