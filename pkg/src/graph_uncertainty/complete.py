"""Closed forms for the unit-weighted complete graph K_N.

For K_N the Laplacian is ``N*I - ones`` with spectrum ``{0, N (N-1 times)}``,
so ``K(alpha) = L - alpha * diag(0, N, ..., N)`` has an ``(N-2)``-dimensional
eigenspace at ``N(1 - alpha)`` and two remaining eigenvalues with
eigenvectors of the form ``[t, 1, ..., 1]``, where ``t`` solves
``t^2 - (2 - N(alpha+1)) t - (N-1) = 0``. The positive root gives the minimal
eigenvalue and traces the lower boundary in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import complete_graph
from .transforms import GraphBasis


def _check_n(n):
    if n < 3:
        raise DomainError(f"complete-graph closed forms need n >= 3, got {n}")


def _radical(n, alpha):
    r = (n * (alpha + 1) - 2) ** 2 + 4 * (n - 1)
    assert r > 0
    return math.sqrt(r)


def kn_x_of_alpha(n: int, alpha: float) -> float:
    """Leading coordinate ``t`` of the minimal eigenvector ``[t, 1, ..., 1]``."""
    _check_n(n)
    return (2 - n * (alpha + 1) + _radical(n, alpha)) / 2


def kn_lambda_min(n: int, alpha: float) -> float:
    _check_n(n)
    return -(-n * (alpha + 1) + _radical(n, alpha)) / 2 - alpha * n


def kn_eigenvector(n: int, alpha: float) -> np.ndarray:
    v = np.ones(n)
    v[0] = kn_x_of_alpha(n, alpha)
    return v


def kn_duc_point(n: int, alpha: float) -> tuple[float, float]:
    """``(<v, Lambda v>, <v, L v>)`` for the unit minimal eigenvector at ``alpha``."""
    t = kn_x_of_alpha(n, alpha)
    denom = t * t + (n - 1)
    return n * (n - 1) / denom, (t - 1) ** 2 * (n - 1) / denom


def kn_omega(n: int, x: float) -> float:
    """Lower boundary height above ``x`` in ``(0, n]``.

    Inverts the x-coordinate of :func:`kn_duc_point` for the positive root ``t``.
    """
    _check_n(n)
    if not 0 < x <= n:
        raise DomainError(f"x={x} outside (0, {n}]")
    t = math.sqrt(max(n * (n - 1) / x - (n - 1), 0.0))
    return (t - 1) ** 2 * (n - 1) / (t * t + n - 1)


@dataclass(frozen=True)
class KnEigenstructure:
    middle_eigenvalue: float
    middle_multiplicity: int
    outliers: tuple[float, float]
    lambda_min: float


def kn_eigenstructure(n: int, alpha: float) -> KnEigenstructure:
    """Eigenvalue ``N(1-alpha)`` with multiplicity ``N-2`` plus the outliers ``a <= b``."""
    _check_n(n)
    if alpha == 0:
        raise DomainError("the eigenstructure statement requires alpha != 0")
    rad = _radical(n, alpha)
    base = 1 - alpha * n
    a = base - (2 - n * (alpha + 1) + rad) / 2
    b = base - (2 - n * (alpha + 1) - rad) / 2
    return KnEigenstructure(n * (1 - alpha), n - 2, (a, b), min(a, b, n * (1 - alpha)))


@dataclass(frozen=True)
class KnBounds:
    n: int
    additive: tuple[float, float]

    def frame_lower(self, d: int) -> float:
        if not 2 <= d <= self.n:
            raise DomainError(f"frame dimension d={d} outside [2, {self.n}]")
        return 2.0 * self.n * (d - 1)


def kn_bounds(n: int) -> KnBounds:
    _check_n(n)
    return KnBounds(n, (n - math.sqrt(n), 2.0 * n))


def kn_fourier_basis(n: int) -> np.ndarray:
    """Helmert eigenbasis of the K_N Laplacian.

    Column 0 is constant; column ``k >= 1`` is proportional to
    ``(1, ..., 1, -k, 0, ..., 0)`` with ``k`` leading ones, so column 1 is
    ``(1, -1, 0, ..., 0) / sqrt(2)``.
    """
    chi = np.zeros((n, n))
    chi[:, 0] = 1 / math.sqrt(n)
    for k in range(1, n):
        chi[:k, k] = 1.0
        chi[k, k] = -k
        chi[:, k] /= math.sqrt(k * (k + 1))
    return chi


def complete_graph_basis(n: int, helmert: bool = True) -> GraphBasis:
    g = complete_graph(n)
    return GraphBasis(g, chi=kn_fourier_basis(n) if helmert else None)
