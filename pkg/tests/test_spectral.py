import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from graph_uncertainty import complete_graph, laplacian
from graph_uncertainty.errors import ConvergenceError, DomainError
from graph_uncertainty.spectral import (default_mult_tol, eigenspace_basis, fix_signs, jacobi_eigh,
                                        rayleigh, sym_eig)

K3 = laplacian(complete_graph(3))
METHODS = ["lapack", "jacobi"]


def _random_sym(rng, n):
    a = rng.standard_normal((n, n))
    return a + a.T


@pytest.mark.parametrize("method", METHODS)
def test_diagonal(method):
    s = sym_eig(np.diag([3.0, 1.0, 2.0]), method=method)
    np.testing.assert_array_equal(s.values, [1, 2, 3])
    np.testing.assert_array_equal(s.vectors, np.eye(3)[:, [1, 2, 0]])


@pytest.mark.parametrize("method", METHODS)
def test_k3_spectrum(method):
    np.testing.assert_allclose(sym_eig(K3, method=method).values, [0, 3, 3], atol=1e-12)


@pytest.mark.parametrize("method", METHODS)
def test_random_6x6_residual(method):
    m = _random_sym(np.random.default_rng(6), 6)
    s = sym_eig(m, method=method)
    assert np.max(np.abs(s.reconstruct() - m)) < 6e-10
    assert np.max(np.abs(s.vectors.T @ s.vectors - np.eye(6))) < 1e-10


def test_thousand_random_reconstructions():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for k in range(1000):
        n = int(rng.integers(1, 33))
        m = _random_sym(rng, n)
        s = sym_eig(m)
        assert np.all(np.diff(s.values) >= 0)
        worst = max(worst, np.max(np.abs(s.reconstruct() - m)) / n)
        assert np.max(np.abs(s.vectors.T @ s.vectors - np.eye(n))) < 1e-10
    assert worst < 1e-10


@pytest.mark.parametrize("n", [2, 7, 16, 32])
def test_jacobi_matches_lapack(n):
    m = _random_sym(np.random.default_rng(n), n)
    a, b = sym_eig(m, method="jacobi"), sym_eig(m)
    np.testing.assert_allclose(a.values, b.values, atol=1e-10 * n)
    # nondegenerate random spectrum: sign convention makes vectors agree
    np.testing.assert_allclose(a.vectors, b.vectors, atol=1e-8)


def test_jacobi_sweep_cap():
    m = _random_sym(np.random.default_rng(1), 8)
    with pytest.raises(ConvergenceError):
        jacobi_eigh(m, max_sweeps=1)


@settings(max_examples=200, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 12)),
              elements=st.floats(-1e3, 1e3, allow_nan=False)))
def test_psd_nonnegative(b):
    m = b.T @ b
    s = sym_eig(m)
    assert s.values[0] >= -1e-10 * max(1.0, s.values[-1])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 16), st.integers(0, 2**32 - 1))
def test_rayleigh_of_eigenvectors(n, seed):
    m = _random_sym(np.random.default_rng(seed), n)
    s = sym_eig(m)
    for j in range(n):
        assert abs(rayleigh(m, s.vectors[:, j]) - s.values[j]) < 1e-10 * max(1.0, np.abs(s.values).max())


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_deterministic_and_sign_convention(n, seed):
    m = _random_sym(np.random.default_rng(seed), n)
    s1, s2 = sym_eig(m), sym_eig(m.copy())
    np.testing.assert_array_equal(s1.vectors, s2.vectors)
    idx = np.argmax(np.abs(s1.vectors), axis=0)
    assert np.all(s1.vectors[idx, np.arange(n)] > 0)


def test_fix_signs_tie_lowest_index():
    v = np.array([[-1.0], [1.0]]) / np.sqrt(2)
    np.testing.assert_allclose(fix_signs(v), [[1 / np.sqrt(2)], [-1 / np.sqrt(2)]])


def test_spectrum_read_only():
    s = sym_eig(K3)
    with pytest.raises(ValueError):
        s.values[0] = 1.0


def test_rejects_nonsymmetric():
    with pytest.raises(DomainError):
        sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        sym_eig(np.ones((2, 3)))
    with pytest.raises(ValueError):
        sym_eig(K3, method="qr")


def test_rayleigh_examples():
    assert rayleigh(np.eye(4), [1, 2, 3, 4]) == pytest.approx(1)
    assert rayleigh(K3, [1, 1, 1]) == pytest.approx(0, abs=1e-15)
    assert rayleigh(K3, [1, -1, 0]) == pytest.approx(3)
    with pytest.raises(DomainError):
        rayleigh(K3, [0, 0, 0])


def test_eigenspace_basis():
    s = sym_eig(K3)
    assert eigenspace_basis(s, 3.0).shape == (3, 2)
    null = eigenspace_basis(s, 0.0)
    np.testing.assert_allclose(null[:, 0], np.ones(3) / np.sqrt(3))
    with pytest.raises(DomainError):
        eigenspace_basis(s, 1.5)


def test_eigenspace_k8_pencil():
    n, alpha = 8, 1.0
    lap = laplacian(complete_graph(n))
    k = lap - alpha * np.diag([0.0] + [n] * (n - 1))
    assert eigenspace_basis(sym_eig(k), n * (1 - alpha)).shape == (n, n - 2)


def test_default_mult_tol():
    assert default_mult_tol([0.0, 0.5]) == 1e-8
    assert default_mult_tol([-200.0, 3.0]) == pytest.approx(2e-6)
