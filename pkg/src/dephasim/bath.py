"""Bath spectral densities and the two dephasing integrals.

Units: the cutoff frequency omega_c is 1 throughout, so times are in
1/omega_c, mode frequencies in omega_c and inverse temperatures are the
product beta*omega_c.

Two bath families are supported: the Ohmic family with spectral density
J(w) = lambda_s * w^s * exp(-w) (sub-Ohmic s < 1, Ohmic s = 1,
super-Ohmic s > 1), and an explicit list of discrete modes
(w_k, |g_k|^2).  The two integrals are

    gamma(t) = int_0^inf dw J(w) coth(beta w / 2) (1 - cos(w t)) / w^2
    phi(t)   = int_0^inf dw J(w) sin(w t) / w^2

with the discrete analogue sum_k 4 |g_k|^2 f(w_k) in place of
int dw J(w) f(w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy.integrate import quad

__all__ = [
    "OhmicFamily",
    "DiscreteMode",
    "DiscreteBath",
    "BathSpec",
    "ThermalContext",
    "QuadratureError",
    "gamma_dynamical",
    "phi_correlation",
    "discretize_ohmic",
]

# Quadrature targets; the exponential cutoff makes the tail beyond
# _W_MAX a < 1e-17 fraction of the integrand scale for s of order 1.
_RTOL = 1e-10
_ATOL = 1e-14
_W_MAX = 40.0
_LIMIT = 800
# Plain adaptive panels resolve up to this many oscillation cycles on the
# upper region; beyond it the cosine transform is split out explicitly.
_MAX_PLAIN_CYCLES = 4.0


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge to the requested tolerance."""

    def __init__(self, message: str, value: float, error_bound: float):
        super().__init__(
            f"{message} (achieved estimate {value!r}, error bound {error_bound!r})"
        )
        self.value = value
        self.error_bound = error_bound


@dataclass(frozen=True)
class OhmicFamily:
    """Continuum bath J(w) = lambda_s * w^s * exp(-w), frequencies in omega_c."""

    s: float
    lambda_s: float

    def __post_init__(self) -> None:
        s, lam = float(self.s), float(self.lambda_s)
        if not (s > 0.0 and math.isfinite(s)):
            raise ValueError(f"spectral exponent s must be > 0, got {self.s!r}")
        if not (lam >= 0.0 and math.isfinite(lam)):
            raise ValueError(f"coupling lambda_s must be >= 0, got {self.lambda_s!r}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "lambda_s", lam)

    def spectral_density(self, w):
        return self.lambda_s * np.power(w, self.s) * np.exp(-w)


class DiscreteMode(NamedTuple):
    omega: float
    g2: float  # |g_k|^2


@dataclass(frozen=True)
class DiscreteBath:
    """Finite list of modes (omega_k, |g_k|^2), frequencies in omega_c."""

    modes: tuple[DiscreteMode, ...]

    def __init__(self, modes: Sequence[tuple[float, float]]):
        parsed = []
        for k, (omega, g2) in enumerate(modes):
            omega, g2 = float(omega), float(g2)
            if not (omega > 0.0 and math.isfinite(omega)):
                raise ValueError(f"mode {k}: omega must be > 0, got {omega!r}")
            if not (g2 >= 0.0 and math.isfinite(g2)):
                raise ValueError(f"mode {k}: |g|^2 must be >= 0, got {g2!r}")
            parsed.append(DiscreteMode(omega, g2))
        object.__setattr__(self, "modes", tuple(parsed))


BathSpec = Union[OhmicFamily, DiscreteBath]


@dataclass(frozen=True)
class ThermalContext:
    """Inverse temperature in cutoff units, beta_omega_c = beta * omega_c."""

    beta_omega_c: float

    def __post_init__(self) -> None:
        b = float(self.beta_omega_c)
        if not (b > 0.0 and math.isfinite(b)):
            raise ValueError(f"beta_omega_c must be finite and > 0, got {b!r}")
        object.__setattr__(self, "beta_omega_c", b)

    @classmethod
    def from_qubit_units(
        cls, beta_omega0: float, omega0_over_omegac: float
    ) -> "ThermalContext":
        return cls(float(beta_omega0) / float(omega0_over_omegac))


def _coth(x: float) -> float:
    # series below 1e-4 per the small-argument expansion 1/x + x/3 - x^3/45
    if x < 1e-4:
        return 1.0 / x + x / 3.0 - x**3 / 45.0
    return 1.0 / math.tanh(x)


def _w_coth(w: float, beta: float) -> float:
    """w * coth(beta w / 2); tends to 2/beta as w -> 0."""
    x = 0.5 * beta * w
    if x < 1e-4:
        return (2.0 / beta) * (1.0 + x * x / 3.0 - x**4 / 45.0)
    return w / math.tanh(x)


def _two_sin2_over_w2(w: float, t: float) -> float:
    """(1 - cos(w t)) / w^2 = 2 sin^2(w t / 2) / w^2; tends to t^2/2 at w = 0."""
    if w == 0.0:
        return 0.5 * t * t
    h = math.sin(0.5 * w * t)
    return 2.0 * h * h / (w * w)


def _sin_over_w(w: float, t: float) -> float:
    """sin(w t) / w; tends to t at w = 0."""
    if w == 0.0:
        return t
    return math.sin(w * t) / w


def _quad_checked(func, a: float, b: float, what: str, **kwargs) -> tuple[float, float]:
    out = quad(
        func, a, b, epsabs=_ATOL, epsrel=_RTOL, limit=_LIMIT, full_output=1, **kwargs
    )
    value, err = out[0], out[1]
    # full_output suppresses warnings; QUADPACK appends a message on trouble.
    if len(out) > 3 and err > 100.0 * max(_ATOL, _RTOL * abs(value)):
        raise QuadratureError(f"{what}: {out[3]}", value, err)
    return value, err


def _gamma_ohmic_family(s: float, lam: float, beta: float, t: float) -> float:
    if t == 0.0 or lam == 0.0:
        return 0.0

    def combined(w: float) -> float:
        # lam * w^{s-2} e^{-w} coth(beta w/2) (1 - cos w t), in the factored
        # form that stays finite and cancellation-free down to w = 0
        return (
            lam
            * w ** (s - 1.0)
            * math.exp(-w)
            * _w_coth(w, beta)
            * _two_sin2_over_w2(w, t)
        )

    # Below `a` the cosine completes at most a quarter period, so the
    # combined integrand is not oscillatory there.
    a = min(1.0, 0.5 * math.pi / t)
    if s < 1.0:
        inv_s = 1.0 / s

        def low_u(u: float) -> float:
            # w = u^{1/s} absorbs the w^{s-1} endpoint factor exactly
            w = u**inv_s
            return (
                (lam / s)
                * math.exp(-w)
                * _w_coth(w, beta)
                * _two_sin2_over_w2(w, t)
            )

        value, err = _quad_checked(low_u, 0.0, a**s, "gamma low region")
    else:
        value, err = _quad_checked(combined, 0.0, a, "gamma low region")

    cycles = t * (_W_MAX - a) / (2.0 * math.pi)
    if cycles <= _MAX_PLAIN_CYCLES:
        v, e = _quad_checked(combined, a, _W_MAX, "gamma high region")
        value += v
        err += e
    else:

        def f_smooth(w: float) -> float:
            return lam * w ** (s - 2.0) * math.exp(-w) * _coth(0.5 * beta * w)

        v1, e1 = _quad_checked(f_smooth, a, _W_MAX, "gamma high region")
        v2, e2 = _quad_checked(
            f_smooth, a, _W_MAX, "gamma cosine transform", weight="cos", wvar=t
        )
        value += v1 - v2
        err += e1 + e2
    if err > 100.0 * max(_ATOL, _RTOL * abs(value)):
        raise QuadratureError("gamma quadrature did not converge", value, err)
    return value


def _phi_ohmic_family(s: float, lam: float, t: float) -> float:
    if t == 0.0 or lam == 0.0:
        return 0.0
    a = min(1.0, 0.5 * math.pi / t)
    if s < 1.0:
        inv_s = 1.0 / s

        def low_u(u: float) -> float:
            w = u**inv_s
            return (lam / s) * math.exp(-w) * _sin_over_w(w, t)

        value, err = _quad_checked(low_u, 0.0, a**s, "phi low region")
    else:

        def low(w: float) -> float:
            return lam * w ** (s - 1.0) * math.exp(-w) * _sin_over_w(w, t)

        value, err = _quad_checked(low, 0.0, a, "phi low region")

    def f_smooth(w: float) -> float:
        return lam * w ** (s - 2.0) * math.exp(-w)

    v, e = _quad_checked(
        f_smooth, a, _W_MAX, "phi sine transform", weight="sin", wvar=t
    )
    value += v
    err += e
    if err > 100.0 * max(_ATOL, _RTOL * abs(value)):
        raise QuadratureError("phi quadrature did not converge", value, err)
    return value


def _check_time(t: float) -> float:
    t = float(t)
    if not (t >= 0.0 and math.isfinite(t)):
        raise ValueError(f"time must be finite and >= 0, got {t!r}")
    return t


def gamma_dynamical(bath: BathSpec, thermal: ThermalContext, t: float) -> float:
    """Decoherence function gamma(t) from vacuum and thermal fluctuations.

    Non-negative, vanishing at t = 0.  Discrete baths are summed exactly;
    the Ohmic family is integrated adaptively to relative tolerance 1e-10
    (absolute floor 1e-14), raising QuadratureError on non-convergence.
    """
    t = _check_time(t)
    beta = thermal.beta_omega_c
    if isinstance(bath, DiscreteBath):
        return sum(
            4.0 * g2 * _coth(0.5 * beta * w) * _two_sin2_over_w2(w, t)
            for w, g2 in bath.modes
        )
    return _gamma_ohmic_family(bath.s, bath.lambda_s, beta, t)


def phi_correlation(bath: BathSpec, t: float, *, method: str = "auto") -> float:
    """Correlation phase phi(t) of the pre-measurement equilibrium state.

    For the Ohmic exponent s = 1 the closed form lambda * arctan(t) is
    used; pass method="quadrature" to force the numerical path (other
    exponents always integrate).  Discrete baths are summed exactly.
    """
    t = _check_time(t)
    if method not in ("auto", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(bath, DiscreteBath):
        return sum(4.0 * g2 * _sin_over_w(w, t) / w for w, g2 in bath.modes)
    if method == "auto" and bath.s == 1.0:
        return bath.lambda_s * math.atan(t)
    return _phi_ohmic_family(bath.s, bath.lambda_s, t)


def discretize_ohmic(
    bath: OhmicFamily, n_modes: int, omega_max: float = _W_MAX
) -> DiscreteBath:
    """Midpoint-rule discretization of the continuum density.

    Each mode carries 4|g_k|^2 = J(w_k) * dw, matching the sum-to-integral
    rule sum_k 4|g_k|^2 f(w_k) -> int dw J(w) f(w).
    """
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    dw = float(omega_max) / n_modes
    centers = (np.arange(n_modes) + 0.5) * dw
    g2 = bath.spectral_density(centers) * dw / 4.0
    return DiscreteBath(list(zip(centers.tolist(), g2.tolist())))
