import math

import numpy as np
import pytest

from dephasim.bath import DiscreteBath, ThermalContext
from dephasim.bloch import BlochDirection, state_from_direction
from dephasim.dynamics import coherence_trajectory
from dephasim.fock import (
    CompositeDensityMatrix,
    FockMode,
    FockSystem,
    TruncationError,
    apply_preparation,
    build_equilibrium,
    coherence_exact,
    coherence_series,
    sigma_z_expectation,
)
from dephasim.preparation import (
    Selective,
    initial_averages,
    scheme_i,
    scheme_ii,
    scheme_iii,
    scheme_iii_prime,
    selective_from_direction,
)

A_DIR = BlochDirection(1.0, 0.3)
B_DIR = BlochDirection(0.8, -0.4)


@pytest.fixture(scope="module")
def two_mode_system():
    return FockSystem([FockMode(1.3, 0.25, 16), FockMode(2.1, 0.2, 12)], omega0=1.0)


@pytest.fixture(scope="module")
def two_mode_equilibrium(two_mode_system):
    return build_equilibrium(two_mode_system, 1.0)


class TestConstruction:
    def test_dimensions(self, two_mode_system):
        assert two_mode_system.bath_dim == 17 * 13
        assert two_mode_system.dim == 2 * 17 * 13

    def test_validation(self):
        with pytest.raises(ValueError):
            FockSystem([FockMode(-1.0, 0.1, 5)], omega0=1.0)
        with pytest.raises(ValueError):
            FockSystem([FockMode(1.0, 0.1, 0)], omega0=1.0)
        with pytest.raises(ValueError):
            FockSystem([], omega0=1.0)

    def test_hamiltonian_hermitian_and_block_diagonal(self):
        fs = FockSystem([FockMode(1.0, 0.3, 6), FockMode(1.5, 0.2, 4)], omega0=0.7)
        h = fs.hamiltonian()
        assert np.max(np.abs(h - h.conj().T)) < 1e-12
        nb = fs.bath_dim
        assert np.max(np.abs(h[:nb, nb:])) == 0.0
        assert np.max(np.abs(h[nb:, :nb])) == 0.0

    def test_displaced_ground_energy(self):
        fs = FockSystem([FockMode(1.0, 0.3, 40), FockMode(1.7, 0.2, 30)], omega0=0.0)
        ground = np.linalg.eigvalsh(fs.bath_hamiltonian(+1))[0]
        want = -(0.3**2 / 1.0 + 0.2**2 / 1.7)
        assert ground == pytest.approx(want, abs=1e-10)

    def test_propagator_unitary(self, two_mode_system):
        u = two_mode_system.propagator(0.7)
        assert np.max(np.abs(u @ u.conj().T - np.eye(two_mode_system.dim))) < 1e-10


class TestEquilibrium:
    def test_trace_hermiticity_positivity(self, two_mode_equilibrium):
        rho = two_mode_equilibrium
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
        assert rho.min_eigenvalue() > -1e-10

    def test_truncation_adequacy_enforced(self):
        fs = FockSystem([FockMode(1.0, 0.1, 10)], omega0=1.0)
        with pytest.raises(TruncationError):
            build_equilibrium(fs, 0.5)  # nbar ~ 1.54 needs n_max >= 25.4

    def test_uncoupled_limit_occupancy(self):
        fs = FockSystem([FockMode(1.0, 0.0, 25)], omega0=1.0)
        beta = 1.5
        rho = build_equilibrium(fs, beta)
        b = fs.lowering_operator(0)
        number_full = np.kron(np.eye(2), b.T @ b)
        occ = np.trace(number_full @ rho.matrix).real
        assert occ == pytest.approx(1.0 / math.expm1(beta), abs=1e-8)

    def test_uncoupled_limit_is_a_product_state(self):
        fs = FockSystem([FockMode(1.0, 0.0, 20)], omega0=0.9)
        beta = 1.2
        rho = build_equilibrium(fs, beta)
        # qubit marginal must be the two-level Gibbs state
        nb = fs.bath_dim
        p1 = np.trace(rho.qubit_block(1, 1)).real
        p0 = np.trace(rho.qubit_block(0, 0)).real
        z = math.exp(-beta * 0.45) + math.exp(beta * 0.45)
        assert p1 == pytest.approx(math.exp(-beta * 0.45) / z, abs=1e-10)
        assert p0 == pytest.approx(math.exp(beta * 0.45) / z, abs=1e-10)

    def test_bad_beta_rejected(self, two_mode_system):
        with pytest.raises(ValueError):
            build_equilibrium(two_mode_system, 0.0)


class TestPreparationOnComposite:
    def test_trace_preserved_for_nonselective(self, two_mode_system, two_mode_equilibrium):
        for scheme in (
            scheme_i(A_DIR),
            scheme_ii(A_DIR, B_DIR),
            scheme_iii(A_DIR, B_DIR),
            scheme_iii_prime(A_DIR, B_DIR),
        ):
            rho0 = apply_preparation(two_mode_equilibrium, scheme)
            assert np.trace(rho0.matrix).real == pytest.approx(1.0, abs=1e-12)
            assert rho0.min_eigenvalue() > -1e-10

    def test_scheme_iii_factorizes(self, two_mode_system, two_mode_equilibrium):
        rho0 = apply_preparation(two_mode_equilibrium, scheme_iii(A_DIR, B_DIR))
        ket = state_from_direction(B_DIR).vector
        bath_part = two_mode_equilibrium.qubit_block(0, 0) + two_mode_equilibrium.qubit_block(1, 1)
        want = np.kron(np.outer(ket, ket.conj()), bath_part)
        assert np.max(np.abs(rho0.matrix - want)) < 1e-10

    def test_scheme_i_energy_basis_kills_coherence_block(self, two_mode_equilibrium):
        rho0 = apply_preparation(two_mode_equilibrium, scheme_i(BlochDirection(0.0, 0.0)))
        assert np.max(np.abs(rho0.qubit_block(0, 1))) < 1e-12

    def test_selective_renormalizes(self, two_mode_equilibrium):
        rho0 = apply_preparation(
            two_mode_equilibrium, selective_from_direction(BlochDirection(1.2, 0.7))
        )
        assert np.trace(rho0.matrix).real == pytest.approx(1.0, abs=1e-12)

    def test_zero_probability_outcome_is_an_error(self, two_mode_system):
        nb = two_mode_system.bath_dim
        m = np.zeros((2 * nb, 2 * nb), dtype=complex)
        m[:nb, :nb] = np.eye(nb) / nb  # entirely in the excited sector
        rho = CompositeDensityMatrix(m)
        ground = Selective(state_from_direction(BlochDirection(math.pi, 0.0)))
        with pytest.raises(ValueError):
            apply_preparation(rho, ground)


class TestCoherenceDynamics:
    def test_t0_matches_analytic_averages(self, two_mode_system, two_mode_equilibrium):
        for scheme in (
            selective_from_direction(BlochDirection(1.2, 0.7)),
            scheme_ii(A_DIR, B_DIR),
            scheme_iii_prime(A_DIR, B_DIR),
        ):
            rho0 = apply_preparation(two_mode_equilibrium, scheme)
            got = coherence_exact(two_mode_system, rho0, 0.0)
            want = initial_averages(scheme, 1.0).sigma_plus
            assert abs(got - want) < 1e-8

    def test_uncoupled_coherence_magnitude_constant(self):
        fs = FockSystem([FockMode(1.0, 0.0, 20)], omega0=0.9)
        rho = build_equilibrium(fs, 1.2)
        rho0 = apply_preparation(rho, selective_from_direction(BlochDirection(1.0, 0.0)))
        series = coherence_series(fs, rho0, np.linspace(0.0, 8.0, 17))
        assert np.ptp(np.abs(series)) < 1e-12

    def test_sigma_z_conserved_under_evolution(self):
        fs = FockSystem([FockMode(1.0, 0.3, 14)], omega0=0.8)
        rho = build_equilibrium(fs, 2.0)
        rho0 = apply_preparation(rho, scheme_ii(A_DIR, B_DIR))
        sz0 = sigma_z_expectation(rho0)
        nb = fs.bath_dim
        for t in np.linspace(0.0, 5.0, 6):
            u = fs.propagator(t)
            evolved = u @ rho0.matrix @ u.conj().T
            sz = np.trace(evolved[:nb, :nb]).real - np.trace(evolved[nb:, nb:]).real
            assert sz == pytest.approx(sz0, abs=1e-10)
            assert np.max(np.abs(evolved - evolved.conj().T)) < 1e-10
            assert np.trace(evolved).real == pytest.approx(1.0, abs=1e-10)

    def test_truncation_convergence_under_doubling(self):
        times = np.linspace(0.0, 5.0, 11)
        base = FockSystem([FockMode(1.3, 0.25, 12), FockMode(2.1, 0.2, 11)], omega0=1.0)
        doubled = FockSystem([FockMode(1.3, 0.25, 24), FockMode(2.1, 0.2, 22)], omega0=1.0)
        scheme = scheme_ii(A_DIR, B_DIR)
        values = []
        for fs in (base, doubled):
            rho0 = apply_preparation(build_equilibrium(fs, 2.0), scheme)
            values.append(coherence_series(fs, rho0, times))
        assert np.max(np.abs(values[0] - values[1])) < 1e-8

    def test_two_mode_oracle_against_analytic_trajectory(
        self, two_mode_system, two_mode_equilibrium
    ):
        bath = DiscreteBath([(1.3, 0.0625), (2.1, 0.04)])
        times = np.linspace(0.0, 5.0, 26)
        for scheme in (
            selective_from_direction(BlochDirection(1.2, 0.7)),
            scheme_i(A_DIR),
            scheme_ii(A_DIR, B_DIR),
            scheme_iii(A_DIR, B_DIR),
            scheme_iii_prime(A_DIR, B_DIR),
        ):
            rho0 = apply_preparation(two_mode_equilibrium, scheme)
            exact = coherence_series(two_mode_system, rho0, times)
            traj = coherence_trajectory(
                scheme, bath, 1.0, 1.0, times, thermal=ThermalContext(1.0)
            )
            rel = np.abs(exact - traj.coherence_plus) / np.abs(traj.coherence_plus)
            assert np.max(rel) < 1e-6


class TestCompositeDensityMatrix:
    def test_trace_enforced(self):
        with pytest.raises(ValueError):
            CompositeDensityMatrix(np.eye(4, dtype=complex))

    def test_hermiticity_enforced(self):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0] = 1.0
        m[0, 1] = 0.5
        with pytest.raises(ValueError):
            CompositeDensityMatrix(m)
