"""Self-contained verification suites behind the `verify` CLI subcommand.

Three suites: `algebra` (qubit/preparation identities), `kernels`
(quadrature against closed-form oracles) and `oracle` (analytic
trajectories against the truncated-Fock brute force).  Each check
reports its maximum observed error against a fixed tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bath, bloch, dynamics, fock, preparation

__all__ = ["CheckResult", "ORACLE_CASES", "run_suite", "SUITES"]

_SEED = 20240901


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.suite}/{self.name}: max_error={self.max_error:.3e}"
            f" tol={self.tolerance:.1e}"
        )


def _random_direction(rng: np.random.Generator) -> bloch.BlochDirection:
    return bloch.BlochDirection(
        math.acos(rng.uniform(-1.0, 1.0)), rng.uniform(-math.pi, math.pi)
    )


# ---------------------------------------------------------------------------
# algebra suite
# ---------------------------------------------------------------------------


def _check_completeness(rng) -> float:
    err = 0.0
    for _ in range(200):
        d = _random_direction(rng)
        p = bloch.state_from_direction(d).projector
        q = bloch.state_from_direction(bloch.antipodal_direction(d)).projector
        err = max(err, float(np.max(np.abs(p + q - bloch.IDENTITY))))
    return err


def _check_unitarity(rng) -> float:
    err = 0.0
    for _ in range(200):
        u = bloch.direction_unitary(_random_direction(rng))
        v = bloch.relative_unitary(_random_direction(rng), _random_direction(rng))
        for m in (u, v):
            err = max(err, float(np.max(np.abs(m.conj().T @ m - bloch.IDENTITY))))
    return err


def _check_state_vs_unitary(rng) -> float:
    err = 0.0
    for _ in range(200):
        d = _random_direction(rng)
        lhs = bloch.direction_unitary(d) @ bloch.KET_1
        rhs = bloch.state_from_direction(d).vector
        err = max(err, float(np.max(np.abs(lhs - rhs))))
    return err


def _check_spin_eigenrelation(rng) -> float:
    err = 0.0
    for _ in range(200):
        d = _random_direction(rng)
        ket = bloch.state_from_direction(d).vector
        err = max(err, float(np.max(np.abs(bloch.spin_component(d) @ ket - ket))))
    return err


def _random_general_scheme(rng) -> preparation.NonSelectiveGeneral:
    return preparation.NonSelectiveGeneral(
        _random_direction(rng), _random_direction(rng), _random_direction(rng)
    )


def _check_effect_resolution(rng) -> float:
    err = 0.0
    for _ in range(100):
        ops = preparation.scheme_operators(_random_general_scheme(rng))
        total = sum(f for f, _ in ops)
        err = max(err, float(np.max(np.abs(total - bloch.IDENTITY))))
        for f, _ in ops:
            err = max(err, float(np.max(np.abs(f @ f - f))))
    return err


def _check_dual_resolution(rng) -> float:
    err = 0.0
    for _ in range(100):
        s = preparation.scheme_ii(_random_direction(rng), _random_direction(rng))
        total = sum(o @ o.conj().T for _, o in preparation.scheme_operators(s))
        err = max(err, float(np.max(np.abs(total - bloch.IDENTITY))))
    return err


def _check_averages_reductions(rng) -> float:
    err = 0.0
    for _ in range(200):
        a, b = _random_direction(rng), _random_direction(rng)
        bw = rng.uniform(0.05, 5.0)
        x = 0.5 * bw
        got = preparation.initial_averages(preparation.scheme_ii(a, b), bw)
        want_p = (
            -0.5
            * np.exp(1j * b.phi)
            * math.tanh(x)
            * math.cos(a.theta)
            * math.sin(b.theta)
        )
        want_z = -math.tanh(x) * math.cos(a.theta) * math.cos(b.theta)
        err = max(err, abs(got.sigma_plus - want_p), abs(got.sigma_z - want_z))

        got = preparation.initial_averages(preparation.scheme_iii(a, b), bw)
        err = max(
            err,
            abs(got.sigma_plus - 0.5 * np.exp(1j * b.phi) * math.sin(b.theta)),
            abs(got.sigma_z - math.cos(b.theta)),
        )

        got = preparation.initial_averages(preparation.scheme_iii_prime(a, b), bw)
        err = max(
            err,
            abs(got.sigma_plus - want_p),
            abs(got.sigma_z - math.cos(b.theta)),
        )
    return err


def _random_nondegenerate(rng) -> tuple[bloch.BlochDirection, bloch.BlochDirection, float]:
    """Random (a, b, beta_omega0) bounded away from the zero-coherence manifold.

    The printed n1/d sums cancel to O(cos^2(theta_a) * bw^2) near it, so
    float evaluation there cannot meet 1e-12 identity tolerances; the
    correlation decoherence is undefined on the manifold itself.
    """
    while True:
        theta_a = math.acos(rng.uniform(-1.0, 1.0))
        theta_b = math.acos(rng.uniform(-1.0, 1.0))
        bw = rng.uniform(0.05, 5.0)
        if (
            abs(math.cos(theta_a)) >= 0.2
            and math.tanh(bw) >= 0.2
            and math.sin(theta_b) >= 0.1
        ):
            return (
                bloch.BlochDirection(theta_a, rng.uniform(-math.pi, math.pi)),
                bloch.BlochDirection(theta_b, rng.uniform(-math.pi, math.pi)),
                bw,
            )


def _check_general_reduces_to_special(rng) -> float:
    err = 0.0
    phis = np.linspace(0.0, 3.0 * math.pi, 41)
    for _ in range(200):
        a, b, bw = _random_nondegenerate(rng)
        for maker, closed in (
            (preparation.scheme_ii, dynamics.gamma_cor_scheme_ii),
            (preparation.scheme_iii_prime, dynamics.gamma_cor_scheme_ii),
            (preparation.scheme_iii, dynamics.gamma_cor_scheme_iii),
        ):
            params = dynamics.scheme_kernel_params(maker(a, b), bw)
            err = max(
                err,
                float(
                    np.max(
                        np.abs(
                            dynamics.gamma_cor_general(params, phis)
                            - closed(bw, phis)
                        )
                    )
                ),
            )
    return err


def _check_predicate_soundness(rng) -> float:
    worst = -math.inf
    phis = np.linspace(0.0, 2.0 * math.pi, 101)
    hits = 0
    for _ in range(1000):
        a, _, bw = _random_nondegenerate(rng)
        th1 = math.acos(rng.uniform(-1.0, 1.0))
        th2 = math.acos(rng.uniform(-1.0, 1.0))
        if min(math.sin(th1), math.sin(th2)) < 0.1:
            continue
        phi1 = rng.uniform(-math.pi, math.pi)
        dphi = rng.choice([0.0, math.pi])
        s = preparation.NonSelectiveGeneral(
            a,
            bloch.BlochDirection(th1, phi1),
            bloch.BlochDirection(th2, phi1 - dphi),
        )
        if not preparation.enhancement_predicate(s, bw):
            continue
        hits += 1
        params = dynamics.scheme_kernel_params(s, bw)
        worst = max(worst, float(np.max(dynamics.gamma_cor_general(params, phis))))
    if hits == 0:
        return math.inf
    return worst


def algebra_suite() -> list[CheckResult]:
    rng = np.random.default_rng(_SEED)
    checks = [
        ("completeness", _check_completeness, 1e-12),
        ("unitarity", _check_unitarity, 1e-12),
        ("state_vs_unitary_column", _check_state_vs_unitary, 1e-12),
        ("spin_eigenrelation", _check_spin_eigenrelation, 1e-12),
        ("effects_resolve_identity", _check_effect_resolution, 1e-12),
        ("dual_resolution_scheme_ii", _check_dual_resolution, 1e-12),
        ("averages_special_cases", _check_averages_reductions, 1e-12),
        ("gamma_cor_general_vs_closed", _check_general_reduces_to_special, 1e-12),
        ("enhancement_predicate_soundness", _check_predicate_soundness, 1e-12),
    ]
    return [
        CheckResult("algebra", name, fn(rng), tol) for name, fn, tol in checks
    ]


# ---------------------------------------------------------------------------
# kernels suite
# ---------------------------------------------------------------------------

_T_GRID = np.concatenate(([0.1, 0.2, 0.5], np.linspace(1.0, 50.0, 25)))


def _check_phi_quadrature() -> float:
    spec = bath.OhmicFamily(s=1.0, lambda_s=1.0)
    return max(
        abs(bath.phi_correlation(spec, t, method="quadrature") - math.atan(t))
        for t in _T_GRID
    )


def _check_gamma_zero_temperature() -> float:
    spec = bath.OhmicFamily(s=1.0, lambda_s=1.0)
    cold = bath.ThermalContext(1e12)  # coth saturates to 1 in double precision
    return max(
        abs(bath.gamma_dynamical(spec, cold, t) - 0.5 * math.log1p(t * t))
        for t in _T_GRID
    )


def _check_discrete_vs_continuum() -> float:
    spec = bath.OhmicFamily(s=1.0, lambda_s=1.0)
    fine = bath.discretize_ohmic(spec, n_modes=10_000, omega_max=40.0)
    thermal = bath.ThermalContext(2.0)
    err = 0.0
    for t in (0.5, 1.0, 2.0, 5.0, 10.0):
        err = max(
            err,
            abs(
                bath.gamma_dynamical(fine, thermal, t)
                - bath.gamma_dynamical(spec, thermal, t)
            ),
            abs(bath.phi_correlation(fine, t) - bath.phi_correlation(spec, t)),
        )
    return err


def _check_temperature_monotonicity() -> float:
    spec = bath.OhmicFamily(s=1.0, lambda_s=1.0)
    betas = [20.0, 5.0, 1.0, 0.2]
    worst = 0.0
    for t in (0.5, 2.0, 10.0):
        values = [bath.gamma_dynamical(spec, bath.ThermalContext(b), t) for b in betas]
        for colder, hotter in zip(values, values[1:]):
            worst = max(worst, colder - hotter)  # hotter must not be smaller
    return worst


def kernels_suite() -> list[CheckResult]:
    lam = 2.0
    spec = bath.OhmicFamily(s=1.0, lambda_s=lam)
    saturation_err = abs(
        bath.phi_correlation(spec, 1000.0, method="quadrature") - lam * 0.5 * math.pi
    )
    return [
        CheckResult("kernels", "phi_quadrature_vs_arctan", _check_phi_quadrature(), 1e-8),
        CheckResult(
            "kernels",
            "gamma_zero_temperature_vs_log",
            _check_gamma_zero_temperature(),
            1e-8,
        ),
        CheckResult("kernels", "phi_saturation", saturation_err, 1e-3 * lam),
        CheckResult(
            "kernels", "discrete_vs_continuum", _check_discrete_vs_continuum(), 1e-4
        ),
        CheckResult(
            "kernels",
            "gamma_temperature_monotonicity",
            _check_temperature_monotonicity(),
            1e-12,
        ),
    ]


# ---------------------------------------------------------------------------
# oracle suite
# ---------------------------------------------------------------------------

_ORACLE_MODES = ((1.3, 0.25, 30), (2.1, 0.2, 18))
_ORACLE_RATIO = 1.0  # omega0 = omega_c keeps qubit and bath units aligned

_A_DIR = bloch.BlochDirection(1.0, 0.3)
_B_DIR = bloch.BlochDirection(0.8, -0.4)


def _oracle_schemes() -> list[tuple[str, preparation.PreparationScheme]]:
    return [
        ("selective", preparation.selective_from_direction(bloch.BlochDirection(1.2, 0.7))),
        ("scheme_i", preparation.scheme_i(_A_DIR)),
        ("scheme_ii", preparation.scheme_ii(_A_DIR, _B_DIR)),
        ("scheme_iii", preparation.scheme_iii(_A_DIR, _B_DIR)),
        ("scheme_iii_prime", preparation.scheme_iii_prime(_A_DIR, _B_DIR)),
    ]


ORACLE_CASES = [
    (label, bw) for bw in (0.5, 1.0, 2.0) for label, _ in _oracle_schemes()
]


def oracle_suite() -> list[CheckResult]:
    times = np.linspace(0.0, 5.0, 50)
    system = fock.FockSystem(
        [fock.FockMode(*m) for m in _ORACLE_MODES], omega0=_ORACLE_RATIO
    )
    discrete = bath.DiscreteBath([(w, g * g) for w, g, _ in _ORACLE_MODES])
    results = []
    for bw in (0.5, 1.0, 2.0):
        beta_cutoff = bw / _ORACLE_RATIO
        rho_eq = fock.build_equilibrium(system, beta_cutoff)
        for label, scheme in _oracle_schemes():
            rho0 = fock.apply_preparation(rho_eq, scheme)
            exact = fock.coherence_series(system, rho0, times)
            traj = dynamics.coherence_trajectory(
                scheme,
                discrete,
                bw,
                _ORACLE_RATIO,
                times,
                thermal=bath.ThermalContext(beta_cutoff),
            )
            scale = np.abs(traj.coherence_plus)
            rel = np.abs(exact - traj.coherence_plus) / np.maximum(scale, 1e-30)
            results.append(
                CheckResult(
                    "oracle", f"{label}_beta{bw:g}", float(np.max(rel)), 1e-6
                )
            )
    return results


SUITES = {
    "algebra": algebra_suite,
    "kernels": kernels_suite,
    "oracle": oracle_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite by name, or all of them."""
    if name == "all":
        results = []
        for suite in ("algebra", "kernels", "oracle"):
            results.extend(SUITES[suite]())
        return results
    if name not in SUITES:
        known = ", ".join(sorted(SUITES)) + ", all"
        raise ValueError(f"unknown suite {name!r} (known: {known})")
    return SUITES[name]()
