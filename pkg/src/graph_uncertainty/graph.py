"""Simple weighted undirected graphs and their matrix representations.

A :class:`Graph` is an immutable vertex count plus a canonical edge list.
Every matrix (adjacency, degree, incidence, weight, both Laplacians) is
derived from that edge list, so the edge order fixed at construction is also
the row order of the incidence matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DisconnectedGraphError, EdgeListParseError, GraphError

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class Graph:
    """Simple, undirected, positively weighted graph on vertices ``0..n-1``.

    ``edges`` holds ``(u, v, w)`` with ``u < v``, sorted lexicographically by
    ``(u, v)``. Use :meth:`from_edges` to build one from unordered input.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 2:
            raise GraphError(f"a graph needs at least 2 vertices, got {self.n}")
        prev = None
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside [0, {self.n})")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) is not stored with u < v")
            if not (w > 0 and np.isfinite(w)):
                raise GraphError(f"edge ({u}, {v}) has non-positive weight {w}")
            if prev is not None and (u, v) <= prev:
                if (u, v) == prev:
                    raise GraphError(f"duplicate edge ({u}, {v})")
                raise GraphError("edges are not sorted lexicographically")
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Graph":
        """Canonicalize ``(u, v[, w])`` tuples and build a graph."""
        canon = {}
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in canon:
                raise GraphError(f"duplicate edge {key}")
            canon[key] = w
        return cls(n, tuple((u, v, w) for (u, v), w in sorted(canon.items())))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)

    @property
    def is_unit_weighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v} {w!r}\n" for u, v, w in self.edges)


def graph_from_edge_list(text: str) -> Graph:
    """Parse ``u v [w]`` lines (0-based, ``#`` comments) into a :class:`Graph`.

    The vertex count is one more than the largest index seen.
    """
    seen: dict[tuple[int, int], int] = {}
    edges = []
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(f"expected 'u v [w]', got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"vertex indices must be integers: {raw.strip()!r}", lineno) from None
        try:
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise EdgeListParseError(f"bad weight {parts[2]!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(f"vertex index out of range in ({u}, {v})", lineno)
        if u == v:
            raise EdgeListParseError(f"loop at vertex {u}", lineno)
        if not (w > 0 and np.isfinite(w)):
            raise EdgeListParseError(f"non-positive weight {w}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {key} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append((key[0], key[1], w))
        max_index = max(max_index, key[1])
    n = max_index + 1
    if n < 2:
        raise EdgeListParseError("edge list defines fewer than 2 vertices")
    return Graph.from_edges(n, edges)


# -- generators ------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    _check_order(n)
    return Graph(n, tuple((u, v, 1.0) for u in range(n) for v in range(u + 1, n)))


def path_graph(n: int) -> Graph:
    _check_order(n)
    return Graph(n, tuple((j, j + 1, 1.0) for j in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    """Unit cycle; for ``n == 2`` this degenerates to a single edge."""
    _check_order(n)
    if n == 2:
        return path_graph(2)
    return Graph.from_edges(n, [(j, (j + 1) % n) for j in range(n)])


def random_connected_graph(n: int, rng: np.random.Generator, edge_prob: float = 0.3,
                           weight_range: tuple[float, float] = (0.5, 2.0)) -> Graph:
    """Random spanning tree plus Bernoulli extra edges, uniform weights."""
    _check_order(n)
    lo, hi = weight_range
    order = rng.permutation(n)
    edges = {}
    for k in range(1, n):
        u, v = int(order[k]), int(order[rng.integers(k)])
        edges[(min(u, v), max(u, v))] = float(rng.uniform(lo, hi))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < edge_prob:
                edges[(u, v)] = float(rng.uniform(lo, hi))
    return Graph.from_edges(n, [(u, v, w) for (u, v), w in edges.items()])


def _check_order(n):
    if n < 2:
        raise GraphError(f"a graph needs at least 2 vertices, got {n}")


# -- matrices ----------------------------------------------------------------

def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = a[v, u] = w
    return a


def degree_matrix(g: Graph) -> np.ndarray:
    """Vertex degrees, i.e. the diagonal of the degree matrix."""
    return adjacency(g).sum(axis=1)


def incidence(g: Graph) -> np.ndarray:
    """``|E| x n`` signed incidence: +1 at the smaller endpoint, -1 at the larger."""
    m = np.zeros((g.num_edges, g.n))
    for k, (u, v, _) in enumerate(g.edges):
        m[k, u] = 1.0
        m[k, v] = -1.0
    return m


def weight_matrix(g: Graph) -> np.ndarray:
    """Edge weights in edge order, i.e. the diagonal of W."""
    return g.weights


def laplacian(g: Graph) -> np.ndarray:
    return np.diag(degree_matrix(g)) - adjacency(g)


def normalized_laplacian(g: Graph) -> np.ndarray:
    deg = degree_matrix(g)
    if np.any(deg <= 0):
        isolated = np.flatnonzero(deg <= 0).tolist()
        raise DisconnectedGraphError(f"isolated vertices {isolated} have zero degree")
    s = 1.0 / np.sqrt(deg)
    return np.eye(g.n) - s[:, None] * adjacency(g) * s[None, :]


def is_connected(g: Graph) -> bool:
    nbrs = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {0}
    queue = deque([0])
    while queue:
        for v in nbrs[queue.popleft()]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n
