import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graph_uncertainty import GraphBasis, additive_bounds, complete_graph, frame_bounds
from graph_uncertainty.complete import (complete_graph_basis, kn_bounds, kn_duc_point, kn_eigenstructure,
                                        kn_eigenvector, kn_fourier_basis, kn_lambda_min, kn_omega,
                                        kn_x_of_alpha)
from graph_uncertainty.errors import DomainError
from graph_uncertainty.feasibility import axis_points, k_matrix


def _k(n, alpha):
    lap = n * np.eye(n) - np.ones((n, n))
    return lap - alpha * np.diag([0.0] + [float(n)] * (n - 1))


def test_k_matrix_block_form():
    n, alpha = 6, 0.7
    k = k_matrix(GraphBasis(complete_graph(n)), alpha)
    np.testing.assert_allclose(k[1:, 1:], n * (1 - alpha) * np.eye(n - 1) - np.ones((n - 1, n - 1)), atol=1e-12)
    np.testing.assert_allclose(k, _k(n, alpha), atol=1e-12)


@pytest.mark.parametrize("n", range(3, 17))
def test_lambda_min_at_zero(n):
    assert kn_lambda_min(n, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert kn_x_of_alpha(n, 0.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("alpha", [1.0, -3.0])
def test_lambda_min_k8(alpha):
    assert kn_lambda_min(8, alpha) == pytest.approx(np.linalg.eigvalsh(_k(8, alpha))[0], abs=1e-9)


def test_lambda_min_grid():
    worst = 0.0
    for n in range(3, 17):
        for alpha in np.linspace(-50, 50, 100):
            worst = max(worst, abs(kn_lambda_min(n, alpha) - np.linalg.eigvalsh(_k(n, alpha))[0]))
    assert worst < 1e-8


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 16), st.floats(-100, 100))
def test_eigenvector_residual(n, alpha):
    v = kn_eigenvector(n, alpha)
    resid = _k(n, alpha) @ v - kn_lambda_min(n, alpha) * v
    assert np.max(np.abs(resid)) < 1e-8 * max(1.0, abs(alpha)) * n


def test_x_of_alpha_decreasing():
    xs = [kn_x_of_alpha(8, a) for a in np.linspace(-20, 20, 200)]
    assert np.all(np.diff(xs) < 0)


def test_duc_point_anchors():
    assert kn_duc_point(8, 0.0) == pytest.approx((7.0, 0.0), abs=1e-12)
    x, y = kn_duc_point(8, -1e6)
    assert x == pytest.approx(0.0, abs=1e-4)
    assert y == pytest.approx(7.0, abs=1e-4)
    low, left = axis_points(GraphBasis(complete_graph(8)))
    assert low == pytest.approx((7.0, 0.0))
    assert left == pytest.approx((0.0, 7.0))


def test_omega_inverts_duc_point():
    for alpha in np.linspace(-5, 0.9, 30):
        x, y = kn_duc_point(8, alpha)
        assert kn_omega(8, x) == pytest.approx(y, abs=1e-10)
    with pytest.raises(DomainError):
        kn_omega(8, 0.0)


@pytest.mark.parametrize("n", [3, 8, 16])
def test_ellipse_conic_fit(n):
    alphas = np.linspace(-6, 0.9, 60)
    pts = np.array([kn_duc_point(n, a) for a in alphas])

    def design(p):
        x, y = p[:, 0], p[:, 1]
        return np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])

    # conic through five sample points: null vector of the 5x6 design
    pick = pts[[0, 15, 30, 45, 59]]
    coef = np.linalg.svd(design(pick))[2][-1]
    resid = design(pts) @ coef
    assert np.max(np.abs(resid)) < 1e-6
    # an ellipse: negative discriminant
    a, b, c = coef[:3]
    assert b * b - 4 * a * c < 0


@pytest.mark.parametrize("n", range(4, 17))
@pytest.mark.parametrize("alpha", [-3, -1, -0.5, 0.5, 1, 3])
def test_eigenstructure(n, alpha):
    es = kn_eigenstructure(n, alpha)
    vals = np.linalg.eigvalsh(_k(n, alpha))
    assert es.middle_multiplicity == n - 2
    assert np.sum(np.abs(vals - es.middle_eigenvalue) <= 1e-8 * max(1, np.abs(vals).max())) == n - 2
    rest = np.sort(vals[np.abs(vals - es.middle_eigenvalue) > 1e-8 * max(1, np.abs(vals).max())])
    np.testing.assert_allclose(sorted(es.outliers), rest, atol=1e-8)
    assert es.lambda_min == pytest.approx(vals[0], abs=1e-8)
    assert es.middle_multiplicity + 2 == n


def test_eigenstructure_examples():
    es = kn_eigenstructure(8, 0.5)
    assert (es.middle_eigenvalue, es.middle_multiplicity) == (4.0, 6)
    assert kn_eigenstructure(8, 1.0).middle_eigenvalue == 0.0
    with pytest.raises(DomainError):
        kn_eigenstructure(8, 0.0)


@pytest.mark.parametrize("n", range(3, 17))
def test_bounds_against_generic(n):
    res = kn_bounds(n)
    b = GraphBasis(complete_graph(n))
    generic = additive_bounds(b)
    assert res.additive[0] == pytest.approx(generic.lower, abs=1e-9)
    assert res.additive[1] == pytest.approx(generic.upper, abs=1e-9)
    for d in range(2, n + 1):
        assert res.frame_lower(d) <= frame_bounds(b, d)[0] + 1e-9


def test_bounds_examples():
    assert kn_bounds(8).additive == pytest.approx((8 - 2 * math.sqrt(2), 16))
    assert kn_bounds(3).additive == pytest.approx((3 - math.sqrt(3), 6))
    assert kn_bounds(8).frame_lower(3) == 32
    with pytest.raises(DomainError):
        kn_bounds(8).frame_lower(9)


def test_small_n_rejected():
    for fn in (kn_lambda_min, kn_x_of_alpha):
        with pytest.raises(DomainError):
            fn(2, 0.5)
    with pytest.raises(DomainError):
        kn_bounds(2)


@pytest.mark.parametrize("n", [3, 7, 12])
def test_helmert_basis(n):
    chi = kn_fourier_basis(n)
    np.testing.assert_allclose(chi.T @ chi, np.eye(n), atol=1e-14)
    lap = n * np.eye(n) - np.ones((n, n))
    np.testing.assert_allclose(lap @ chi, chi * ([0.0] + [n] * (n - 1)), atol=1e-12)
    np.testing.assert_array_equal(complete_graph_basis(n).chi, chi)
