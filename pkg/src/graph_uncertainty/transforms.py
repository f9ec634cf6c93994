"""Graph Fourier transforms and the weighted difference operators."""

from __future__ import annotations

import json

import numpy as np

from . import graph as gr
from .errors import DisconnectedGraphError, DomainError
from .spectral import Spectrum, sym_eig


class GraphBasis:
    """Both Laplacian eigenbases of a connected graph, computed once.

    Attributes
    ----------
    laplacian, normalized_laplacian : (n, n) arrays
    laplacian_spectrum : Spectrum of L (columns are chi_l)
    normalized_spectrum : Spectrum of the normalized Laplacian (columns F_l)
    d_r : (|E|, n) difference operator ``W^{1/2} M``
    d_nr : (|E|, n) normalized difference operator ``W^{1/2} M D^{-1/2}``

    ``chi`` may be supplied to pin a particular orthonormal eigenbasis of L
    (useful when eigenvalues repeat); it is checked against L.
    """

    def __init__(self, graph: gr.Graph, chi=None, method="lapack"):
        if not gr.is_connected(graph):
            raise DisconnectedGraphError("graph is not connected")
        self.graph = graph
        self.laplacian = gr.laplacian(graph)
        self.normalized_laplacian = gr.normalized_laplacian(graph)
        self.degrees = gr.degree_matrix(graph)
        spec = sym_eig(self.laplacian, method=method)
        if chi is not None:
            spec = _pinned_spectrum(self.laplacian, spec, chi)
        self.laplacian_spectrum = spec
        self.normalized_spectrum = sym_eig(self.normalized_laplacian, method=method)
        sqrt_w = np.sqrt(gr.weight_matrix(graph))
        self.d_r = sqrt_w[:, None] * gr.incidence(graph)
        self.d_nr = self.d_r / np.sqrt(self.degrees)[None, :]
        for arr in (self.laplacian, self.normalized_laplacian, self.degrees, self.d_r, self.d_nr):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def chi(self) -> np.ndarray:
        return self.laplacian_spectrum.vectors

    @property
    def lambdas(self) -> np.ndarray:
        return self.laplacian_spectrum.values

    @property
    def fourier(self) -> np.ndarray:
        return self.normalized_spectrum.vectors

    @property
    def mus(self) -> np.ndarray:
        return self.normalized_spectrum.values

    @property
    def lambda_max(self) -> float:
        return float(self.lambdas[-1])

    def operators(self, normalized=False):
        """``(laplacian, spectrum diagonal, eigenbasis, difference operator)``."""
        if normalized:
            return self.normalized_laplacian, self.mus, self.fourier, self.d_nr
        return self.laplacian, self.lambdas, self.chi, self.d_r


def _pinned_spectrum(lap, spec: Spectrum, chi) -> Spectrum:
    chi = np.asarray(chi, dtype=float)
    n = lap.shape[0]
    if chi.shape != (n, n):
        raise DomainError(f"eigenbasis must be {n}x{n}, got {chi.shape}")
    if np.max(np.abs(chi.T @ chi - np.eye(n))) > 1e-10:
        raise DomainError("supplied eigenbasis is not orthonormal")
    resid = lap @ chi - chi * spec.values
    if np.max(np.abs(resid)) > 1e-9 * max(1.0, spec.values[-1]):
        raise DomainError("supplied columns are not eigenvectors of L in ascending order")
    return Spectrum(spec.values.copy(), chi.copy())


def _signal(b: GraphBasis, f, name="signal") -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape[0] != b.n:
        raise DomainError(f"{name} has length {f.shape[0]}, graph has {b.n} vertices")
    return f


def gft(b: GraphBasis, f) -> np.ndarray:
    """``chi^T f``; also accepts an ``(n, k)`` block of signals."""
    return b.chi.T @ _signal(b, f)


def igft(b: GraphBasis, fhat) -> np.ndarray:
    return b.chi @ _signal(b, fhat, "spectrum")


def ngft(b: GraphBasis, f) -> np.ndarray:
    return b.fourier.T @ _signal(b, f)


def ingft(b: GraphBasis, fstar) -> np.ndarray:
    return b.fourier @ _signal(b, fstar, "spectrum")


def difference(b: GraphBasis, f) -> np.ndarray:
    """Edge-indexed ``(f[u] - f[v]) * sqrt(w)`` for each edge ``(u, v)``, ``u < v``."""
    return b.d_r @ _signal(b, f)


def normalized_difference(b: GraphBasis, f) -> np.ndarray:
    return b.d_nr @ _signal(b, f)


def read_signal(path) -> np.ndarray:
    """One value per line; blank lines and ``#`` comments are skipped."""
    values = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise ValueError(f"{path}: line {lineno}: not a number: {line!r}") from None
    return np.array(values)


def signal_to_json(f) -> str:
    return json.dumps([float(x) for x in np.asarray(f)])


def signal_from_json(text: str) -> np.ndarray:
    return np.array(json.loads(text), dtype=float)
