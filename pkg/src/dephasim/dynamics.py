"""Time-dependent qubit observables under pure dephasing.

The coherences factorize as

    <sigma_+-(t)> = <sigma_+-> exp[+-i(omega0 t + chi(t))] exp[-gamma_eff(t)]

with gamma_eff = gamma + gamma_cor.  The dynamical part gamma(t) comes
from the bath kernels; the correlation part gamma_cor(t) and the phase
shift chi(t) depend on the preparation only through three real
functionals (n1, n2, d) of the measurement angles and beta*omega0, and
on the bath only through the correlation phase phi(t).

Sign conventions: gamma_cor <= 0 (coherence enhancement) for scheme ii
and scheme iii'; gamma_cor >= 0 for scheme iii and every selective
preparation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bath import BathSpec, ThermalContext, gamma_dynamical, phi_correlation
from .preparation import (
    InitialAverages,
    NonSelectiveGeneral,
    PreparationScheme,
    Selective,
    delta_phi,
    initial_averages,
)

__all__ = [
    "SchemeKernelParams",
    "DephasingTrajectory",
    "DegenerateSchemeError",
    "NonPositiveLogArgumentError",
    "scheme_kernel_params",
    "selective_kernel_params",
    "gamma_cor_general",
    "gamma_cor_scheme_ii",
    "gamma_cor_scheme_iii",
    "gamma_cor_selective",
    "chi_phase",
    "coherence_trajectory",
    "purity",
    "entropy",
]

# Initial coherences below this are treated as identically zero; the
# correlation decoherence and the phase shift are then undefined.
_DEGENERATE_TOL = 1e-13


class DegenerateSchemeError(ValueError):
    """The preparation produces no initial coherence; gamma_cor is undefined."""


class NonPositiveLogArgumentError(ValueError):
    """The argument of the correlation logarithm is not positive.

    This cannot occur for physical parameter combinations (except at the
    isolated points where the coherence passes exactly through zero) and
    is surfaced rather than clamped.
    """


@dataclass(frozen=True)
class SchemeKernelParams:
    """Angle/temperature functionals (n1, n2, d) of a preparation.

    d is proportional to the squared magnitude of the initial coherence,
    so d ~ 0 means the prepared state carries no coherence to evolve.
    """

    n1: float
    n2: float
    d: float

    def is_degenerate(self) -> bool:
        return (
            abs(self.n1) < 1e-12 and abs(self.n2) < 1e-12 and abs(self.d) < 1e-12
        ) or abs(self.d) < 1e-15


def scheme_kernel_params(
    s: NonSelectiveGeneral, beta_omega0: float
) -> SchemeKernelParams:
    """The three functionals for a general non-selective measurement."""
    if not isinstance(s, NonSelectiveGeneral):
        raise TypeError("kernel parameters are defined for non-selective schemes")
    bw = float(beta_omega0)
    if not (bw > 0.0 and math.isfinite(bw)):
        raise ValueError(f"beta_omega0 must be finite and > 0, got {beta_omega0!r}")
    sa4 = math.sin(0.5 * s.a.theta) ** 4
    ca4 = math.cos(0.5 * s.a.theta) ** 4
    sin2_a = math.sin(s.a.theta) ** 2
    s1, s2 = math.sin(s.b1.theta), math.sin(s.b2.theta)
    dphi = delta_phi(s)
    cd, sd = math.cos(dphi), math.sin(dphi)
    ep, em = math.exp(bw), math.exp(-bw)
    n1 = (
        (ep * sa4 - em * ca4) * s1**2
        + (ep * ca4 - em * sa4) * s2**2
        + math.sinh(bw) * sin2_a * cd * s1 * s2
    )
    n2 = 2.0 * math.cos(s.a.theta) * sd * s1 * s2
    d = (
        (0.5 * sin2_a + ep * sa4 + em * ca4) * s1**2
        + (0.5 * sin2_a + ep * ca4 + em * sa4) * s2**2
        + (math.cosh(bw) * sin2_a + 2.0 * (sa4 + ca4)) * cd * s1 * s2
    )
    return SchemeKernelParams(n1, n2, d)


def selective_kernel_params(sigma_z: float, beta_omega0: float) -> SchemeKernelParams:
    """Functionals reproducing the selective-preparation closed forms.

    With n1 = sinh(x) - <s3> cosh(x), n2 = 0, d = cosh(x) - <s3> sinh(x)
    (x = beta*omega0/2) the general evaluators reduce exactly to the
    selective gamma_cor and chi; the identity n1^2 - d^2 = -(1 - <s3>^2)
    does the work.
    """
    if abs(sigma_z) > 1.0 + 1e-12:
        raise ValueError(f"<sigma_3> must lie in [-1, 1], got {sigma_z!r}")
    x = 0.5 * float(beta_omega0)
    return SchemeKernelParams(
        math.sinh(x) - sigma_z * math.cosh(x),
        0.0,
        math.cosh(x) - sigma_z * math.sinh(x),
    )


def _as_float_or_array(x, scalar: bool):
    return float(x) if scalar else x


def gamma_cor_general(p: SchemeKernelParams, phi_t):
    """Correlation decoherence -0.5*ln{1 + ((n1^2+n2^2)/d^2 - 1) sin^2(phi)
    + (n2/d) sin(2 phi)}.

    Accepts a scalar or array phi_t.  Raises DegenerateSchemeError for
    parameter sets with no initial coherence and
    NonPositiveLogArgumentError if the bracket is not positive.
    """
    if p.is_degenerate():
        raise DegenerateSchemeError(
            "no initial coherence: gamma_cor is undefined for this preparation"
        )
    scalar = np.ndim(phi_t) == 0
    phi = np.asarray(phi_t, dtype=float)
    sin_phi = np.sin(phi)
    bracket = (
        1.0
        + ((p.n1**2 + p.n2**2) / p.d**2 - 1.0) * sin_phi**2
        + (p.n2 / p.d) * np.sin(2.0 * phi)
    )
    if np.any(bracket <= 0.0):
        raise NonPositiveLogArgumentError(
            f"log argument not positive (min {float(np.min(bracket))!r})"
        )
    return _as_float_or_array(-0.5 * np.log(bracket), scalar)


def _check_bw(beta_omega0: float) -> float:
    bw = float(beta_omega0)
    if not (bw > 0.0 and math.isfinite(bw)):
        raise ValueError(f"beta_omega0 must be finite and > 0, got {beta_omega0!r}")
    return bw


def gamma_cor_scheme_ii(beta_omega0: float, phi_t):
    """Closed form for scheme ii: -0.5*ln[1 + sin^2(phi)/sinh^2(bw/2)] <= 0."""
    bw = _check_bw(beta_omega0)
    scalar = np.ndim(phi_t) == 0
    s = np.sin(np.asarray(phi_t, dtype=float))
    return _as_float_or_array(
        -0.5 * np.log1p(s * s / math.sinh(0.5 * bw) ** 2), scalar
    )


def gamma_cor_scheme_iii(beta_omega0: float, phi_t):
    """Closed form for scheme iii: -0.5*ln[1 - sin^2(phi)/cosh^2(bw/2)] >= 0."""
    bw = _check_bw(beta_omega0)
    scalar = np.ndim(phi_t) == 0
    s = np.sin(np.asarray(phi_t, dtype=float))
    return _as_float_or_array(
        -0.5 * np.log1p(-s * s / math.cosh(0.5 * bw) ** 2), scalar
    )


def gamma_cor_selective(sigma_z: float, beta_omega0: float, phi_t):
    """Correlation decoherence for a selective preparation; always >= 0."""
    bw = _check_bw(beta_omega0)
    if abs(sigma_z) > 1.0 + 1e-12:
        raise ValueError(f"<sigma_3> must lie in [-1, 1], got {sigma_z!r}")
    scalar = np.ndim(phi_t) == 0
    s = np.sin(np.asarray(phi_t, dtype=float))
    x = 0.5 * bw
    denom = (math.cosh(x) - sigma_z * math.sinh(x)) ** 2
    bracket = 1.0 - (1.0 - sigma_z**2) * s * s / denom
    if np.any(bracket <= 0.0):
        raise NonPositiveLogArgumentError(
            "selective log argument not positive; reachable only at the"
            " isolated zeros of the coherence"
        )
    return _as_float_or_array(-0.5 * np.log(bracket), scalar)


def chi_phase(p: SchemeKernelParams, phi_t):
    """Phase shift chi = atan2(n1 sin(phi), d cos(phi) + n2 sin(phi)).

    The two-argument arctangent keeps chi well defined when phi exceeds
    pi/2; trajectory assembly unwraps it to a continuous curve with
    chi = 0 at phi = 0.
    """
    if p.is_degenerate():
        raise DegenerateSchemeError(
            "no initial coherence: chi is undefined for this preparation"
        )
    scalar = np.ndim(phi_t) == 0
    phi = np.asarray(phi_t, dtype=float)
    sin_phi, cos_phi = np.sin(phi), np.cos(phi)
    return _as_float_or_array(
        np.arctan2(p.n1 * sin_phi, p.d * cos_phi + p.n2 * sin_phi), scalar
    )


def purity(v: float) -> float:
    """Qubit purity (1 + v^2)/2 from the Bloch vector magnitude."""
    v = _check_bloch(v)
    return 0.5 * (1.0 + v * v)


def entropy(v: float) -> float:
    """Von Neumann entropy ln2 - (1+v)/2 ln(1+v) - (1-v)/2 ln(1-v).

    The v -> 1 limit is taken with 0*ln(0) = 0, giving S = 0 for a pure
    state; v = 0 gives ln 2.
    """
    v = _check_bloch(v)
    up = 0.5 * (1.0 + v) * math.log1p(v)
    lo = 0.0 if v == 1.0 else 0.5 * (1.0 - v) * math.log1p(-v)
    return math.log(2.0) - up - lo


def _check_bloch(v: float) -> float:
    v = float(v)
    if not (0.0 <= v <= 1.0 + 1e-9):
        raise ValueError(f"Bloch magnitude must lie in [0, 1], got {v!r}")
    return min(v, 1.0)


@dataclass(frozen=True)
class DephasingTrajectory:
    """Sampled observables on an increasing time grid (units 1/omega_c).

    For degenerate preparations (zero initial coherence) the columns
    gamma_cor, gamma_eff, chi and reduced_coherence are NaN while the
    complex coherence is exactly zero; `degenerate` flags this.
    """

    grid: np.ndarray
    gamma: np.ndarray
    gamma_cor: np.ndarray
    gamma_eff: np.ndarray
    phi: np.ndarray
    chi: np.ndarray
    coherence_plus: np.ndarray
    reduced_coherence: np.ndarray
    bloch_v: np.ndarray
    purity: np.ndarray
    entropy: np.ndarray
    averages: InitialAverages
    degenerate: bool


def _kernel_params_for(
    scheme: PreparationScheme, averages: InitialAverages, beta_omega0: float
) -> SchemeKernelParams:
    if isinstance(scheme, Selective):
        return selective_kernel_params(averages.sigma_z, beta_omega0)
    return scheme_kernel_params(scheme, beta_omega0)


def coherence_trajectory(
    scheme: PreparationScheme,
    bath: BathSpec,
    beta_omega0: float,
    omega0_over_omegac: float,
    grid: Sequence[float],
    thermal: Optional[ThermalContext] = None,
) -> DephasingTrajectory:
    """Assemble the full trajectory for one preparation/bath/temperature.

    `thermal` defaults to beta_omega0 / omega0_over_omegac in cutoff
    units.  <sigma_3(t)> is constant in this model, so the Bloch
    magnitude, purity and entropy follow from the decaying coherence
    alone.  Kernel errors are re-raised with the offending grid point.
    """
    bw = _check_bw(beta_omega0)
    ratio = float(omega0_over_omegac)
    if not (ratio > 0.0 and math.isfinite(ratio)):
        raise ValueError(
            f"omega0_over_omegac must be finite and > 0, got {omega0_over_omegac!r}"
        )
    t = np.asarray(grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("grid must be a non-empty 1-d array of times")
    if np.any(t < 0.0) or np.any(np.diff(t) <= 0.0):
        raise ValueError("grid times must be >= 0 and strictly increasing")
    if thermal is None:
        thermal = ThermalContext.from_qubit_units(bw, ratio)

    averages = initial_averages(scheme, bw)

    gam = np.empty_like(t)
    phi = np.empty_like(t)
    for i, ti in enumerate(t):
        try:
            gam[i] = gamma_dynamical(bath, thermal, ti)
            phi[i] = phi_correlation(bath, ti)
        except Exception as exc:
            raise type(exc)(
                f"kernel evaluation failed at t = {float(ti)!r}: {exc}"
            ) from exc

    degenerate = abs(averages.sigma_plus) < _DEGENERATE_TOL
    if degenerate:
        nan = np.full_like(t, np.nan)
        v = np.full_like(t, abs(averages.sigma_z))
        return DephasingTrajectory(
            grid=t,
            gamma=gam,
            gamma_cor=nan.copy(),
            gamma_eff=nan.copy(),
            phi=phi,
            chi=nan.copy(),
            coherence_plus=np.zeros_like(t, dtype=complex),
            reduced_coherence=nan.copy(),
            bloch_v=v,
            purity=np.array([purity(x) for x in v]),
            entropy=np.array([entropy(x) for x in v]),
            averages=averages,
            degenerate=True,
        )

    params = _kernel_params_for(scheme, averages, bw)
    gcor = np.asarray(gamma_cor_general(params, phi), dtype=float)
    # anchor the unwrap at phi = 0 so chi(0) = 0 even if the grid starts late
    chi_anchored = chi_phase(params, np.concatenate(([0.0], phi)))
    chi = np.unwrap(chi_anchored)[1:]
    geff = gam + gcor
    reduced = np.exp(-geff)
    coherence = averages.sigma_plus * np.exp(1j * (ratio * t + chi)) * reduced
    v = np.sqrt(4.0 * abs(averages.sigma_plus) ** 2 * reduced**2 + averages.sigma_z**2)
    return DephasingTrajectory(
        grid=t,
        gamma=gam,
        gamma_cor=gcor,
        gamma_eff=geff,
        phi=phi,
        chi=chi,
        coherence_plus=coherence,
        reduced_coherence=reduced,
        bloch_v=v,
        purity=np.array([purity(x) for x in v]),
        entropy=np.array([entropy(x) for x in v]),
        averages=averages,
        degenerate=False,
    )
