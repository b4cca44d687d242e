import numpy as np
import pytest

from conftest import SIGMA_X, random_hermitian, random_kraus_family
from qmarkov import (
    ConvergenceError,
    MarkovChain,
    MarkovOperator,
    apply,
    boundedness_probe,
    cesaro_average,
    coords,
    evolve,
    from_kraus,
    from_stochastic,
    from_unitary,
    functional_average,
    hs_inner,
    identity_operator,
    is_nonnegative,
    is_stationary,
    min_eigenvalue,
    pure_state,
    random_quantum_density,
    unitary_vector_average,
)


def off_diagonal_amplifier(factor: float) -> MarkovOperator:
    """Scales the symmetric off-diagonal coordinate; trace preserving, unbounded."""
    matrix = np.eye(4)
    matrix[2, 2] = factor
    return MarkovOperator(n=2, matrix=matrix)


class TestEvolve:
    def test_identity_constant(self):
        rng = np.random.default_rng(60)
        q = random_quantum_density(3, rng)
        densities = evolve(MarkovChain(operator=identity_operator(3), start=q), 5)
        for d in densities:
            np.testing.assert_allclose(d, q, atol=1e-14)

    def test_sigma_x_alternates(self):
        chain = MarkovChain(operator=from_unitary(SIGMA_X), start=np.diag([1.0, 0.0]))
        densities = evolve(chain, 4)
        np.testing.assert_allclose(densities[0], np.diag([1.0, 0.0]), atol=1e-14)
        np.testing.assert_allclose(densities[1], np.diag([0.0, 1.0]), atol=1e-14)
        np.testing.assert_allclose(densities[2], np.diag([1.0, 0.0]), atol=1e-14)

    def test_kraus_channel_keeps_quantum(self):
        rng = np.random.default_rng(61)
        op = from_kraus(random_kraus_family(rng, 3, 2))
        chain = MarkovChain(operator=op, start=random_quantum_density(3, rng))
        for d in evolve(chain, 50):
            assert min_eigenvalue(d) >= -1e-9
            assert np.trace(d).real == pytest.approx(1.0, abs=1e-10)


class TestBoundednessProbe:
    def test_unitary_constant_purity(self):
        rng = np.random.default_rng(62)
        q = random_quantum_density(2, rng)
        purity = float(np.trace(q @ q).real)
        report = boundedness_probe(
            MarkovChain(operator=from_unitary(SIGMA_X), start=q), horizon=30, bound=1.0
        )
        assert report.max_value == pytest.approx(purity, abs=1e-12)
        assert not report.exceeded

    def test_pinching_non_increasing(self):
        chain = MarkovChain(
            operator=from_stochastic(np.eye(2)),
            start=pure_state(np.array([1.0, 1.0]) / np.sqrt(2)),
        )
        values = [float(np.trace(d @ d).real) for d in evolve(chain, 10)]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
        report = boundedness_probe(chain, horizon=10, bound=1.0 + 1e-9)
        assert not report.exceeded

    def test_quantum_chain_stays_below_one(self):
        rng = np.random.default_rng(73)
        for _ in range(5):
            op = from_kraus(random_kraus_family(rng, 3, 2))
            chain = MarkovChain(operator=op, start=random_quantum_density(3, rng))
            report = boundedness_probe(chain, horizon=50, bound=1.0 + 1e-9)
            assert not report.exceeded

    def test_amplifier_exceeds(self):
        chain = MarkovChain(
            operator=off_diagonal_amplifier(1.1),
            start=pure_state(np.array([1.0, 1.0]) / np.sqrt(2)),
        )
        report = boundedness_probe(chain, horizon=60, bound=10.0)
        assert report.exceeded
        assert report.first_exceeded is not None
        # geometric growth oracle: 0.5 + 0.5 * 1.1^(2t) crosses 10 near t = 16
        assert 10 <= report.first_exceeded <= 20


class TestCesaroAverage:
    def test_identity_stationary_immediately(self):
        rng = np.random.default_rng(63)
        q = random_quantum_density(2, rng)
        result = cesaro_average(MarkovChain(operator=identity_operator(2), start=q))
        assert result.iterations == 0
        np.testing.assert_allclose(result.average, q, atol=1e-14)

    def test_phase_unitary_pinches(self):
        u = np.diag([1.0, np.exp(1j * 2.39996)])
        chain = MarkovChain(
            operator=from_unitary(u), start=pure_state(np.array([1.0, 1.0]) / np.sqrt(2))
        )
        result = cesaro_average(chain, tol=1e-8)
        np.testing.assert_allclose(result.average, np.diag([0.5, 0.5]), atol=1e-7)
        assert result.residual <= 1e-8
        assert np.trace(result.average).real == pytest.approx(1.0, abs=1e-10)

    def test_classical_period_two(self):
        chain = MarkovChain(
            operator=from_stochastic(np.array([[0.0, 1.0], [1.0, 0.0]])),
            start=np.diag([1.0, 0.0]),
        )
        result = cesaro_average(chain)
        np.testing.assert_allclose(result.average, np.diag([0.5, 0.5]), atol=1e-12)

    def test_unbounded_chain_errors(self):
        chain = MarkovChain(
            operator=off_diagonal_amplifier(1.1),
            start=pure_state(np.array([1.0, 1.0]) / np.sqrt(2)),
        )
        with pytest.raises(ConvergenceError):
            cesaro_average(chain, tol=1e-8, max_doublings=30)

    def test_jordan_block_stochastic_errors(self):
        # column sums are 1 but the matrix is a defective eigenvalue-1 block,
        # so averages drift forever
        chain = MarkovChain(
            operator=from_stochastic(np.array([[2.0, 1.0], [-1.0, 0.0]])),
            start=np.diag([1.0, 0.0]),
        )
        with pytest.raises(ConvergenceError):
            cesaro_average(chain, tol=1e-8, max_doublings=40)

    def test_residual_drops_below_target(self):
        # doubling residuals computed by an independent partial-sum loop
        rng = np.random.default_rng(64)
        op = from_kraus(random_kraus_family(rng, 2, 2))
        q = random_quantum_density(2, rng)
        k = op.matrix
        c0 = coords(q)
        residuals = []
        s = k.copy()
        t_mat = k.copy()
        t = 1
        for _ in range(25):
            avg = s @ c0 / t
            residuals.append(float(np.linalg.norm(k @ avg - avg)))
            s = s + t_mat @ s
            t_mat = t_mat @ t_mat
            t *= 2
        tail = residuals[5:]
        assert all(b <= a * 1.01 for a, b in zip(tail, tail[1:]))
        assert residuals[-1] < 1e-6

    def test_quantum_closure(self):
        rng = np.random.default_rng(65)
        op = from_kraus(random_kraus_family(rng, 3, 2))
        q = random_quantum_density(3, rng)
        result = cesaro_average(MarkovChain(operator=op, start=q))
        assert is_nonnegative(result.average, 1e-9)


class TestStationarity:
    def test_identity(self):
        rng = np.random.default_rng(66)
        q = random_quantum_density(2, rng)
        assert is_stationary(MarkovChain(operator=identity_operator(2), start=q), tol=1e-12)

    def test_swap_not_stationary(self):
        chain = MarkovChain(operator=from_unitary(SIGMA_X), start=np.diag([1.0, 0.0]))
        assert not is_stationary(chain, tol=1e-8)

    def test_cesaro_average_is_stationary(self):
        rng = np.random.default_rng(67)
        op = from_kraus(random_kraus_family(rng, 2, 2))
        chain = MarkovChain(operator=op, start=random_quantum_density(2, rng))
        result = cesaro_average(chain, tol=1e-9)
        assert is_stationary(MarkovChain(operator=op, start=result.average), tol=1e-9)


class TestFunctionalAverage:
    def test_identity_functional(self):
        rng = np.random.default_rng(68)
        op = from_kraus(random_kraus_family(rng, 2, 2))
        chain = MarkovChain(operator=op, start=random_quantum_density(2, rng))
        assert functional_average(chain, np.eye(2)) == pytest.approx(1.0, abs=1e-9)

    def test_period_two_projector(self):
        chain = MarkovChain(
            operator=from_stochastic(np.array([[0.0, 1.0], [1.0, 0.0]])),
            start=np.diag([1.0, 0.0]),
        )
        assert functional_average(chain, np.diag([1.0, 0.0])) == pytest.approx(0.5, abs=1e-10)

    def test_matches_running_average(self):
        rng = np.random.default_rng(69)
        op = from_kraus(random_kraus_family(rng, 3, 2))
        q = random_quantum_density(3, rng)
        x = random_hermitian(rng, 3)
        chain = MarkovChain(operator=op, start=q)
        value = functional_average(chain, x)
        # brute-force running mean over 10^4 steps
        k = op.matrix
        xc = coords(x)
        c = coords(q)
        total = 0.0
        for _ in range(10_000):
            c = k @ c
            total += float(xc @ c)
        assert value == pytest.approx(total / 10_000, abs=1e-3)


class TestUnitaryVectorAverage:
    def test_identity(self):
        v = np.array([1.0, 2.0j, -0.5])
        np.testing.assert_allclose(unitary_vector_average(np.eye(3), v, 100), v, atol=1e-12)

    def test_negated_identity_cancels(self):
        v = np.array([0.3, 0.8 - 0.1j])
        avg = unitary_vector_average(-np.eye(2), v, 1000)
        assert np.abs(avg).max() <= 1e-14

    def test_phase_decay(self):
        u = np.diag([np.exp(1j * np.pi / np.sqrt(2)), np.exp(1j)])
        v = np.array([1.0, 1.0]) / np.sqrt(2)
        t = 10_000
        avg = unitary_vector_average(u, v, t)
        assert np.linalg.norm(avg) <= 1e-3
        # closed-form geometric sum oracle per component
        for j, theta in enumerate((np.pi / np.sqrt(2), 1.0)):
            z = np.exp(1j * theta)
            expected = v[j] * z * (z**t - 1.0) / (z - 1.0) / t
            assert avg[j] == pytest.approx(expected, abs=1e-9)

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="not unitary"):
            unitary_vector_average(np.diag([1.0, 2.0]), np.ones(2), 10)


class TestContrast:
    def test_density_average_converges_but_vector_average_shrinks(self):
        u = np.diag([np.exp(1j * np.pi / np.sqrt(2)), np.exp(1j)])
        v = np.array([1.0, 1.0]) / np.sqrt(2)
        vec_avg = unitary_vector_average(u, v, 10_000)
        assert np.linalg.norm(vec_avg) <= 1e-3
        chain = MarkovChain(operator=from_unitary(u), start=pure_state(v))
        result = cesaro_average(chain, tol=1e-8)
        assert result.residual <= 1e-8
        assert np.trace(result.average).real == pytest.approx(1.0, abs=1e-10)
        assert is_nonnegative(result.average, 1e-9)


class TestChainValidation:
    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            MarkovChain(operator=identity_operator(2), start=np.eye(3) / 3)

    def test_trace_checked(self):
        with pytest.raises(ValueError, match="trace 1"):
            MarkovChain(operator=identity_operator(2), start=np.eye(2))
