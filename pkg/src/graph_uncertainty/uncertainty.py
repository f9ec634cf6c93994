"""Additive and frame uncertainty bounds for difference operators on graphs.

For a connected graph the sum ``||D f||^2 + ||D fhat||^2`` equals the
quadratic form of the modified Laplacian ``L + diag(lambda)`` evaluated at
``fhat``, so its sharp bounds are the extreme eigenvalues of that matrix. The
frame version sums the ``d`` smallest (largest) of those eigenvalues.
The ``normalized`` flag swaps in the normalized Laplacian, its eigenbasis and
``D_nr``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .spectral import Spectrum, sym_eig
from .transforms import GraphBasis

PARSEVAL_TOL = 1e-8


@dataclass(frozen=True)
class AdditiveBounds:
    lower: float
    upper: float
    modified_spectrum: Spectrum


class ParsevalFrame:
    """A ``d x n`` real matrix ``E`` with ``E E^T = I_d``."""

    def __init__(self, matrix, tol=PARSEVAL_TOL):
        e = np.array(matrix, dtype=float, ndmin=2)
        d, n = e.shape
        if d > n:
            raise DomainError(f"a Parseval frame needs d <= n, got {d} x {n}")
        resid = float(np.max(np.abs(e @ e.T - np.eye(d))))
        if resid > tol:
            raise DomainError(f"not a Parseval frame: max |EE^T - I| = {resid:.3e}")
        e.setflags(write=False)
        self.matrix = e

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def d(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def rotated(self, q) -> "ParsevalFrame":
        """Left-multiply by a ``d x d`` orthogonal matrix."""
        return ParsevalFrame(np.asarray(q) @ self.matrix)


def random_parseval_frame(d: int, n: int, rng: np.random.Generator) -> ParsevalFrame:
    """Orthonormalize the rows of a Gaussian ``d x n`` matrix."""
    q, _ = np.linalg.qr(rng.standard_normal((n, d)))
    return ParsevalFrame(q.T)


def modified_laplacian(b: GraphBasis, normalized=False) -> np.ndarray:
    lap, diag, _, _ = b.operators(normalized)
    return lap + np.diag(diag)


def modified_spectrum(b: GraphBasis, normalized=False) -> Spectrum:
    return sym_eig(modified_laplacian(b, normalized))


def additive_bounds(b: GraphBasis, normalized=False) -> AdditiveBounds:
    spec = modified_spectrum(b, normalized)
    lower, upper = float(spec.values[0]), float(spec.values[-1])
    # positivity holds on connected graphs; fail loudly if it does not
    if not lower > 0:
        raise DomainError(f"modified Laplacian has non-positive minimum eigenvalue {lower}")
    return AdditiveBounds(lower, upper, spec)


def additive_functional(b: GraphBasis, f, normalized=False) -> float:
    """``||D f||^2 + ||D T f||^2`` with T the (normalized) graph Fourier transform."""
    _, _, basis, diff = b.operators(normalized)
    f = np.asarray(f, dtype=float)
    if f.shape != (b.n,):
        raise DomainError(f"signal has shape {f.shape}, expected ({b.n},)")
    if not np.any(f):
        raise DomainError("uncertainty functional is undefined for the zero signal")
    return float(np.sum((diff @ f) ** 2) + np.sum((diff @ (basis.T @ f)) ** 2))


def pulled_back_eigenvector(b: GraphBasis, j: int, normalized=False) -> np.ndarray:
    """Vertex-domain signal whose transform is the j-th modified-Laplacian eigenvector."""
    _, _, basis, _ = b.operators(normalized)
    return basis @ modified_spectrum(b, normalized).vectors[:, j]


def _frame_matrix(b: GraphBasis, e) -> np.ndarray:
    if not isinstance(e, ParsevalFrame):
        e = ParsevalFrame(e)
    if e.shape[1] != b.n:
        raise DomainError(f"frame has {e.shape[1]} columns, graph has {b.n} vertices")
    return e.matrix


def frame_objective(b: GraphBasis, e, normalized=False) -> float:
    """``||D T^* E^T||_F^2 + ||D E^T||_F^2`` for a Parseval frame ``E``."""
    _, _, basis, diff = b.operators(normalized)
    et = _frame_matrix(b, e).T
    return float(np.sum((diff @ (basis.T @ et)) ** 2) + np.sum((diff @ et) ** 2))


def frame_objective_trace(b: GraphBasis, e, normalized=False) -> float:
    """Same value through ``tr((L + Lambda) T^T E^T E T)``."""
    _, _, basis, _ = b.operators(normalized)
    em = _frame_matrix(b, e)
    g = basis.T @ em.T @ em @ basis
    return float(np.trace(modified_laplacian(b, normalized) @ g))


def _check_d(b: GraphBasis, d):
    if not 2 <= d <= b.n:
        raise DomainError(f"frame dimension d={d} outside [2, {b.n}]")


def frame_bounds(b: GraphBasis, d: int, normalized=False) -> tuple[float, float]:
    _check_d(b, d)
    vals = additive_bounds(b, normalized).modified_spectrum.values
    return float(np.sum(vals[:d])), float(np.sum(vals[-d:]))


def extremal_frame(b: GraphBasis, d: int, which="min", normalized=False) -> ParsevalFrame:
    """First (``min``) or last (``max``) ``d`` rows of ``(T P)^T``.

    ``T`` is the Fourier eigenbasis and ``P`` the eigenbasis of the modified
    Laplacian.
    """
    _check_d(b, d)
    _, _, basis, _ = b.operators(normalized)
    rows = (basis @ additive_bounds(b, normalized).modified_spectrum.vectors).T
    if which == "min":
        return ParsevalFrame(rows[:d])
    if which == "max":
        return ParsevalFrame(rows[-d:])
    raise ValueError(f"which must be 'min' or 'max', got {which!r}")


def support_product(b: GraphBasis, f, zero_tol=None) -> int:
    """``|supp f| * |supp fhat|`` with entries at or below ``zero_tol`` counted as zero."""
    f = np.asarray(f, dtype=float)
    if not np.any(f):
        raise DomainError("support product is undefined for the zero signal")
    if zero_tol is None:
        zero_tol = 1e-9 * float(np.max(np.abs(f)))
    fhat = b.chi.T @ f
    return int(np.sum(np.abs(f) > zero_tol)) * int(np.sum(np.abs(fhat) > zero_tol))
