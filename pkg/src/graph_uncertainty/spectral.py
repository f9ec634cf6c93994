"""Dense symmetric eigendecomposition with a deterministic sign convention.

Two engines are available. ``"lapack"`` (default) wraps
:func:`numpy.linalg.eigh`; ``"jacobi"`` is a cyclic Jacobi rotation solver
kept as an independent cross-check. Both return a :class:`Spectrum` whose
eigenvectors are normalized so that each column's largest-magnitude entry is
positive (ties go to the lowest index).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-12
_TIE_RTOL = 1e-9
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)
        self.vectors.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.values)

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


def default_mult_tol(values) -> float:
    """Relative clustering tolerance ``1e-8 * max(1, max|lambda|)``."""
    values = np.asarray(values)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return 1e-8 * max(1.0, scale)


def _check_symmetric(m, tol):
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if tol is None:
        tol = 1e-10 * max(1.0, float(np.max(np.abs(m), initial=0.0)))
    asym = float(np.max(np.abs(m - m.T), initial=0.0))
    if asym > tol:
        raise DomainError(f"matrix is not symmetric (max |m - m^T| = {asym:.3e} > {tol:.3e})")
    return 0.5 * (m + m.T)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so the largest-magnitude entry (lowest index on ties) is positive."""
    v = np.array(vectors, dtype=float)
    mags = np.abs(v)
    peak = mags.max(axis=0)
    for j in range(v.shape[1]):
        i = int(np.flatnonzero(mags[:, j] >= peak[j] * (1 - _TIE_RTOL))[0])
        if v[i, j] < 0:
            v[:, j] = -v[:, j]
    return v


def _off_norm(a) -> float:
    # direct sum; ||a||^2 - ||diag a||^2 cancels catastrophically near convergence
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(a, max_sweeps=JACOBI_MAX_SWEEPS, rel_tol=JACOBI_REL_TOL):
    """Cyclic Jacobi eigenvalue iteration for a real symmetric matrix.

    Rotations sweep the strict upper triangle row by row. Iteration stops when
    the off-diagonal Frobenius norm drops below ``rel_tol * ||a||_F``.
    Returns unsorted ``(values, vectors)``.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    threshold = rel_tol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                if abs(apq) <= _EPS * min(abs(a[p, p]), abs(a[q, q])):
                    # below rounding of the diagonal: rotating would change nothing
                    a[p, q] = a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ rot
    if _off_norm(a) <= threshold:
        return np.diag(a).copy(), v
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def sym_eig(m, tol=None, method="lapack") -> Spectrum:
    """Eigendecomposition of a symmetric matrix.

    ``tol`` bounds the accepted asymmetry (default ``1e-10 * max(1, max|m|)``).
    """
    m = _check_symmetric(m, tol)
    if method == "lapack":
        values, vectors = np.linalg.eigh(m)
    elif method == "jacobi":
        values, vectors = jacobi_eigh(m)
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], vectors[:, order]
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return Spectrum(np.asarray(values, dtype=float), fix_signs(vectors))


def rayleigh(m, v) -> float:
    v = np.asarray(v, dtype=float)
    nrm2 = float(v @ v)
    if nrm2 == 0.0:
        raise DomainError("Rayleigh quotient of the zero vector")
    return float(v @ (np.asarray(m) @ v)) / nrm2


def eigenspace_basis(s: Spectrum, target: float, mult_tol=None) -> np.ndarray:
    """Columns of ``s.vectors`` whose eigenvalue lies within ``mult_tol`` of ``target``."""
    if mult_tol is None:
        mult_tol = default_mult_tol(s.values)
    mask = np.abs(s.values - target) <= mult_tol
    if not mask.any():
        raise DomainError(f"no eigenvalue within {mult_tol:.3e} of {target}")
    return s.vectors[:, mask]
