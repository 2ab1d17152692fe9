import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.extra.numpy as hnp
import hypothesis.strategies as st

from qwalk2d.hermitian import (
    HermitianMatrix,
    JacobiConvergenceError,
    hermitian_eigenvalues,
    trace_norm,
)


def random_hermitian(rng, n, unit_frobenius=True):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    return h / np.linalg.norm(h) if unit_frobenius else h


def givens_unitary(rng, n, count):
    """Random unitary as a product of complex plane rotations."""
    u = np.eye(n, dtype=complex)
    for _ in range(count):
        p, q = rng.choice(n, size=2, replace=False)
        theta, phi = rng.uniform(0, 2 * np.pi, size=2)
        c, s = np.cos(theta), np.sin(theta) * np.exp(1j * phi)
        rows = u[[p, q], :].copy()
        u[p, :] = c * rows[0] - np.conj(s) * rows[1]
        u[q, :] = s * rows[0] + c * rows[1]
    return u


def bell_partial_transpose():
    psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = np.outer(psi, psi.conj()).reshape(2, 2, 2, 2)
    return rho.transpose(2, 1, 0, 3).reshape(4, 4)


def test_identity():
    r = hermitian_eigenvalues(np.eye(4))
    assert r.eigenvalues.tolist() == [1.0, 1.0, 1.0, 1.0]
    assert r.iterations == 0


def test_pauli_x():
    r = hermitian_eigenvalues(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(r.eigenvalues, [-1, 1], atol=1e-15)


def test_pauli_y_complex_pivot():
    r = hermitian_eigenvalues(np.array([[0, -1j], [1j, 0]]))
    np.testing.assert_allclose(r.eigenvalues, [-1, 1], atol=1e-15)


def test_2x2_closed_form(rng):
    worst = 0.0
    for _ in range(1000):
        a, c = rng.normal(size=2)
        b = complex(*rng.normal(size=2))
        m = np.array([[a, b], [np.conj(b), c]])
        half = np.sqrt(((a - c) / 2) ** 2 + abs(b) ** 2)
        expected = np.array([(a + c) / 2 - half, (a + c) / 2 + half])
        worst = max(worst, np.max(np.abs(hermitian_eigenvalues(m).eigenvalues - expected)))
    assert worst < 1e-12


@pytest.mark.parametrize("n", [3, 17, 120, 500])
def test_trace_and_frobenius(rng, n):
    m = random_hermitian(rng, n)
    r = hermitian_eigenvalues(m)
    assert r.eigenvalues.size == n
    assert np.all(np.diff(r.eigenvalues) >= 0)
    assert abs(r.eigenvalues.sum() - np.trace(m).real) < 1e-10
    assert abs(np.sum(r.eigenvalues ** 2) - np.linalg.norm(m) ** 2) < 1e-10
    assert r.offdiag_norm <= 1e-13 * np.linalg.norm(m)


@pytest.mark.parametrize("n", [2, 6, 30])
def test_unitary_conjugation_invariance(rng, n):
    m = random_hermitian(rng, n)
    u = givens_unitary(rng, n, 4 * n * n)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(n), atol=1e-12)
    conj = u @ m @ u.conj().T
    conj = 0.5 * (conj + conj.conj().T)
    a = hermitian_eigenvalues(m).eigenvalues
    b = hermitian_eigenvalues(conj).eigenvalues
    assert np.max(np.abs(a - b)) < 1e-11


def test_matches_lapack_on_bigger_matrix(rng):
    m = random_hermitian(rng, 60, unit_frobenius=False)
    np.testing.assert_allclose(hermitian_eigenvalues(m).eigenvalues, np.linalg.eigvalsh(m), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    hnp.arrays(np.float64, st.tuples(st.integers(1, 7), st.just(2)).map(lambda s: (s[0], s[0], 2)),
               elements=st.floats(-10, 10)),
)
def test_spectrum_matches_lapack(raw):
    a = raw[..., 0] + 1j * raw[..., 1]
    m = a + a.conj().T
    scale = max(1.0, np.linalg.norm(m))
    got = hermitian_eigenvalues(m).eigenvalues
    assert np.max(np.abs(got - np.linalg.eigvalsh(m))) < 1e-12 * scale


def test_deterministic_iteration_count(rng):
    m = random_hermitian(rng, 40)
    a, b = hermitian_eigenvalues(m), hermitian_eigenvalues(m.copy())
    assert a.iterations == b.iterations
    assert np.array_equal(a.eigenvalues, b.eigenvalues)


def test_trace_norm():
    rho = np.diag([0.5, 0.25, 0.25, 0.0])
    assert trace_norm(rho) == pytest.approx(1.0, abs=1e-10)
    assert trace_norm(bell_partial_transpose()) == pytest.approx(2.0, abs=1e-12)
    assert trace_norm(np.zeros((3, 3))) == 0.0


def test_bell_partial_transpose_spectrum():
    ev = hermitian_eigenvalues(bell_partial_transpose()).eigenvalues
    np.testing.assert_allclose(ev, [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_non_hermitian_rejected():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigenvalues(np.array([[1, 2], [0, 1]]))
    with pytest.raises(ValueError):
        HermitianMatrix(np.ones((2, 3)))


def test_non_convergence_reported(rng):
    m = random_hermitian(rng, 30)
    with pytest.raises(JacobiConvergenceError) as err:
        hermitian_eigenvalues(m, max_sweeps=1)
    assert err.value.sweeps == 1
    assert err.value.offdiag_norm > 0


def test_labels_length_checked():
    HermitianMatrix(np.eye(2), labels=[(0, 0), (0, 2)])
    with pytest.raises(ValueError):
        HermitianMatrix(np.eye(2), labels=[0])
