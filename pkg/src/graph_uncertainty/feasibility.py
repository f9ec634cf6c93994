"""Feasibility region of difference-estimator pairs and its lower boundary.

Work happens in the spectral domain: for a unit vector ``g`` (the graph
Fourier transform of a unit signal) the region collects the points
``(<g, Lambda g>, <g, L g>)`` where ``Lambda = diag(lambda_0..lambda_{N-1})``.
Its lower boundary (the differential uncertainty curve) is swept out by the
minimal eigenvectors of the pencil ``K(alpha) = L - alpha * Lambda``; the
upper boundary is traced the same way from maximal eigenvectors.

The tracer bisects on ``alpha`` using the monotone functions ``H_-`` and
``H_+`` (extreme values of ``<g, Lambda g>`` over the extremal eigenspace) and
falls back to a rotation inside a degenerate eigenspace when the target
falls in a jump of ``H``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.spatial import ConvexHull

from .errors import ConvergenceError, DomainError
from .spectral import default_mult_tol
from .transforms import GraphBasis, difference, gft
from .uncertainty import additive_bounds

LOWER, UPPER = "lower", "upper"
LIMIT_ALPHA = 1e12
REFINE_TOL = 5e-7
UPPER_METHOD = "maximal eigenvectors of K(alpha) (extension beyond the lower-boundary theory)"


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances for the curve tracer.

    ``mult_tol`` and ``x_tol`` default to values relative to the spectrum
    scale (``1e-8`` and ``1e-9`` times ``max(1, lambda_max)`` respectively).
    """

    mult_tol: float | None = None
    x_tol: float | None = None
    bracket_scale: float = 1e3
    max_doublings: int = 64
    max_bisections: int = 300
    crossing_width: float = 1e-10


@dataclass(frozen=True)
class DucSample:
    alpha: float
    x: float
    y: float
    m_alpha: float
    multiplicity: int
    h_minus: float
    h_plus: float
    nu: np.ndarray = field(repr=False, compare=False)

    def row(self):
        return (self.alpha, self.x, self.y, self.m_alpha, self.multiplicity, self.h_minus, self.h_plus)


@dataclass(frozen=True)
class UncertaintyCurve:
    """Traced boundary samples sorted by ``x`` plus the analytic axis anchors.

    ``left_end`` and ``right_end`` are the limits ``alpha -> -inf`` and
    ``alpha -> +inf`` of the tracer (for the upper curve the roles of the
    signs flip); ``alpha0`` is the tracer's point at ``alpha = 0``.
    """

    samples: tuple[DucSample, ...]
    axis_low: tuple[float, float]
    axis_left: tuple[float, float]
    lambda_max: float
    left_end: DucSample
    right_end: DucSample
    alpha0: DucSample
    side: str = LOWER

    @property
    def xs(self) -> np.ndarray:
        return np.array([s.x for s in self.samples])

    @property
    def ys(self) -> np.ndarray:
        return np.array([s.y for s in self.samples])


@dataclass(frozen=True)
class _Eval:
    t: float
    alpha: float
    m_alpha: float
    basis: np.ndarray
    h_minus: float
    h_plus: float
    comp_vecs: np.ndarray


class _Pencil:
    """Extremal eigen-analysis of ``sign * K(alpha)``.

    Everything is parametrized by ``t = sign * alpha`` so that ``H_+-`` are
    increasing in ``t`` for both sides. Large ``|t|`` is handled by
    eigen-solving ``K / max(1, |t|)``.
    """

    def __init__(self, b: GraphBasis, side=LOWER, config: SolverConfig | None = None):
        if side not in (LOWER, UPPER):
            raise ValueError(f"side must be {LOWER!r} or {UPPER!r}")
        self.b = b
        self.side = side
        self.sign = 1.0 if side == LOWER else -1.0
        self.cfg = config or SolverConfig()
        self.lap = b.laplacian
        self.delta = b.lambdas
        self.lam_max = b.lambda_max
        self.lap_signed = self.sign * self.lap
        self._diag = np.diag_indices(b.n)
        self.x_tol = self.cfg.x_tol if self.cfg.x_tol is not None else 1e-9 * max(1.0, self.lam_max)

    def evaluate(self, t: float, widen: float = 0.0) -> _Eval:
        alpha = self.sign * t
        s = max(1.0, abs(t))
        k = self.lap_signed / s
        k[self._diag] -= (alpha * self.sign / s) * self.delta
        # sign convention of the spectral module is irrelevant here: only
        # eigenvalues and the span of the extremal eigenspace are used
        vals, vecs = np.linalg.eigh(k)
        vals = vals * s
        tol = self.cfg.mult_tol if self.cfg.mult_tol is not None else default_mult_tol(vals)
        tol = max(tol, widen)
        basis = vecs[:, vals - vals[0] <= tol]
        if basis.shape[1] == 1:
            h = float(basis[:, 0] @ (self.delta * basis[:, 0]))
            return _Eval(t, alpha, self.sign * float(vals[0]), basis, h, h, np.ones((1, 1)))
        comp = basis.T @ (self.delta[:, None] * basis)
        h, u = np.linalg.eigh(0.5 * (comp + comp.T))
        return _Eval(t, alpha, self.sign * float(vals[0]), basis, float(h[0]), float(h[-1]), u)

    def sample(self, ev: _Eval, nu) -> DucSample:
        nu = np.asarray(nu, dtype=float)
        nu = nu / np.linalg.norm(nu)
        x = float(nu @ (self.delta * nu))
        y = float(nu @ (self.lap @ nu))
        return DucSample(ev.alpha, x, y, ev.m_alpha, ev.basis.shape[1], ev.h_minus, ev.h_plus, nu)

    def _extreme_vectors(self, ev: _Eval):
        return ev.basis @ ev.comp_vecs[:, -1], ev.basis @ ev.comp_vecs[:, 0]

    def solve_inside(self, ev: _Eval, x: float) -> DucSample:
        """Unit vector of the eigenspace at ``ev`` with ``<nu, Lambda nu> = x``."""
        nu_plus, nu_minus = self._extreme_vectors(ev)
        if ev.h_plus - ev.h_minus <= self.x_tol:
            nu = nu_plus if abs(ev.h_plus - x) <= abs(ev.h_minus - x) else nu_minus
            return self.sample(ev, nu)
        return self.sample(ev, self.rotate(ev, x))

    def rotate(self, ev: _Eval, x: float) -> np.ndarray:
        """Solve ``<nu(theta), Lambda nu(theta)> = x`` for ``theta`` in ``[0, pi/2]``."""
        nu_plus, nu_minus = self._extreme_vectors(ev)
        overlap = float(nu_plus @ nu_minus)

        def nu_of(theta):
            num = math.cos(theta) * nu_plus + math.sin(theta) * nu_minus
            return num / math.sqrt(1.0 + math.sin(2.0 * theta) * overlap)

        def resid(theta):
            v = nu_of(theta)
            return float(v @ (self.delta * v)) - x

        lo_val, hi_val = resid(0.0), resid(math.pi / 2)
        if lo_val <= 0.0:
            return nu_of(0.0)
        if hi_val >= 0.0:
            return nu_of(math.pi / 2)
        return nu_of(brentq(resid, 0.0, math.pi / 2, xtol=1e-15, rtol=4 * np.finfo(float).eps))

    def locate(self, t: float, x: float):
        ev = self.evaluate(t)
        if ev.h_minus - self.x_tol <= x <= ev.h_plus + self.x_tol:
            return ev, 0
        return ev, (1 if ev.h_plus < x else -1)

    def trace(self, x: float) -> DucSample:
        if not 0.0 < x < self.lam_max:
            raise DomainError(f"x={x} outside the open interval (0, {self.lam_max})")
        cfg = self.cfg
        lo, hi = -cfg.bracket_scale * self.lam_max, cfg.bracket_scale * self.lam_max
        for end in ("lo", "hi"):
            for _ in range(cfg.max_doublings):
                t = lo if end == "lo" else hi
                ev, direction = self.locate(t, x)
                if direction == 0:
                    return self.solve_inside(ev, x)
                if (end == "lo" and direction == 1) or (end == "hi" and direction == -1):
                    break
                if end == "lo":
                    lo *= 2.0
                else:
                    hi *= 2.0
            else:
                raise ConvergenceError(f"could not bracket x={x} after {cfg.max_doublings} doublings")
        for _ in range(cfg.max_bisections):
            mid = 0.5 * (lo + hi)
            ev, direction = self.locate(mid, x)
            if direction == 0:
                return self.solve_inside(ev, x)
            if direction == 1:
                lo = mid
            else:
                hi = mid
            if hi - lo <= cfg.crossing_width * max(1.0, abs(lo), abs(hi)):
                return self._crossing(lo, hi, x)
        raise ConvergenceError(f"bisection for x={x} did not converge")

    def _crossing(self, lo, hi, x) -> DucSample:
        # two eigenvalue branches meet inside [lo, hi]; their separation at the
        # midpoint is at most lambda_max * (hi - lo)
        beta = 0.5 * (lo + hi)
        ev = self.evaluate(beta, widen=2.0 * self.lam_max * (hi - lo))
        if ev.basis.shape[1] == 1:
            # H is continuous here: the bracket collapsed at the alpha resolution
            # before x came within x_tol, so this is the closest attainable sample
            return self.sample(ev, ev.basis[:, 0])
        if not ev.h_minus - self.x_tol <= x <= ev.h_plus + self.x_tol:
            raise ConvergenceError(
                f"x={x} not bracketed at crossing alpha={self.sign * beta} "
                f"(H- = {ev.h_minus}, H+ = {ev.h_plus})")
        return self.solve_inside(ev, x)

    def points_at(self, t: float) -> list[DucSample]:
        """Boundary point(s) from the eigenspace at ``t``: both ends of a jump if degenerate."""
        ev = self.evaluate(t)
        nu_plus, nu_minus = self._extreme_vectors(ev)
        if ev.h_plus - ev.h_minus > self.x_tol:
            return [self.sample(ev, nu_minus), self.sample(ev, nu_plus)]
        return [self.sample(ev, nu_plus)]

    def limit(self, direction: int) -> DucSample:
        """Tracer limit as ``t -> direction * inf``; ties broken toward the boundary side."""
        ev = self.evaluate(direction * LIMIT_ALPHA * max(1.0, self.lam_max))
        a = self.sign * self.lap
        comp = ev.basis.T @ a @ ev.basis
        _, u = np.linalg.eigh(0.5 * (comp + comp.T))
        return self.sample(ev, ev.basis @ u[:, 0])


# -- public operations ----------------------------------------------------------

def k_matrix(b: GraphBasis, alpha: float) -> np.ndarray:
    return b.laplacian - alpha * np.diag(b.lambdas)


def min_eigpair(b: GraphBasis, alpha: float, mult_tol=None) -> tuple[float, np.ndarray]:
    """Minimal eigenvalue of ``K(alpha)`` and an orthonormal basis of its eigenspace."""
    ev = _Pencil(b, LOWER, SolverConfig(mult_tol=mult_tol)).evaluate(alpha)
    return ev.m_alpha, ev.basis


def h_bounds(b: GraphBasis, alpha: float, mult_tol=None) -> tuple[float, float]:
    """``(H_-(alpha), H_+(alpha))``: extreme ``<g, Lambda g>`` over the minimal eigenspace."""
    ev = _Pencil(b, LOWER, SolverConfig(mult_tol=mult_tol)).evaluate(alpha)
    return ev.h_minus, ev.h_plus


def duc_point_for_x(b: GraphBasis, x: float, config: SolverConfig | None = None,
                    side=LOWER) -> DucSample:
    """Point of the (lower or upper) boundary above ``x`` with its ``alpha`` and eigenvector."""
    return _Pencil(b, side, config).trace(x)


def axis_points(b: GraphBasis) -> tuple[tuple[float, float], tuple[float, float]]:
    """``((mean(lambda), 0), (0, L[0, 0]))``."""
    return (float(np.mean(b.lambdas)), 0.0), (0.0, float(b.laplacian[0, 0]))


def x_targets(lam_max: float, num_points: int) -> np.ndarray:
    return lam_max * np.arange(1, num_points + 1) / (num_points + 1)


def duc_curve(b: GraphBasis, num_points: int, config: SolverConfig | None = None,
              workers: int = 1, side=LOWER) -> UncertaintyCurve:
    """Trace ``num_points`` boundary samples at x-targets uniform in ``(0, lambda_max)``."""
    if num_points < 2:
        raise DomainError(f"need at least 2 curve points, got {num_points}")
    pencil = _Pencil(b, side, config)
    targets = x_targets(b.lambda_max, num_points)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            traced = list(pool.map(pencil.trace, targets))
    else:
        traced = [pencil.trace(x) for x in targets]
    traced.sort(key=lambda s: s.x)
    samples = []
    for s in traced:
        if not samples or s.x > samples[-1].x:
            samples.append(s)
    low, left = axis_points(b)
    return UncertaintyCurve(
        samples=tuple(samples),
        axis_low=low,
        axis_left=left,
        lambda_max=b.lambda_max,
        left_end=pencil.limit(-1),
        right_end=pencil.limit(+1),
        alpha0=pencil.points_at(0.0)[0],
        side=side,
    )


def convexity_defects(xs, ys) -> np.ndarray:
    """Chord-minus-curve values at interior samples; all ``>= 0`` for a convex curve."""
    xs, ys = np.asarray(xs), np.asarray(ys)
    x0, x1, x2 = xs[:-2], xs[1:-1], xs[2:]
    chord = ((x2 - x1) * ys[:-2] + (x1 - x0) * ys[2:]) / (x2 - x0)
    return chord - ys[1:-1]


# -- boundary refinement ----------------------------------------------------------

def _tangent_gap(px, py, qx, qy, slope_p, slope_q) -> float:
    """Distance from chord ``pq`` to the intersection of the supporting lines at p and q."""
    hp, hq = math.hypot(slope_p, 1.0), math.hypot(slope_q, 1.0)
    a1, b1 = slope_p / hp, -1.0 / hp
    a2, b2 = slope_q / hq, -1.0 / hq
    det = a1 * b2 - b1 * a2
    if abs(det) < 1e-15:
        return 0.0
    c1, c2 = a1 * px + b1 * py, a2 * qx + b2 * qy
    cx, cy = (c1 * b2 - b1 * c2) / det, (a1 * c2 - c1 * a2) / det
    dx, dy = qx - px, qy - py
    length = math.hypot(dx, dy)
    if length < 1e-15:
        return math.hypot(cx - px, cy - py)
    return abs(dx * (cy - py) - dy * (cx - px)) / length


def refine_boundary(pencil: _Pencil, seeds, tol=REFINE_TOL, max_points=200_000) -> list[DucSample]:
    """Insert samples (bisecting the tangent angle) until every chord is within ``tol``.

    Each chord of the result lies within ``tol`` of the true boundary arc it
    spans, so the polygon through the samples is an inner approximation of
    the region accurate to ``tol``.
    """
    def key(s):
        return (pencil.sign * s.alpha, s.x)

    pts = sorted(seeds, key=key)
    out = [pts[0]]
    stack = list(reversed(pts[1:]))
    while stack:
        q = stack[-1]
        p = out[-1]
        tp, tq = pencil.sign * p.alpha, pencil.sign * q.alpha
        phi_p, phi_q = math.atan(tp), math.atan(tq)
        gap = _tangent_gap(p.x, p.y, q.x, q.y, p.alpha, q.alpha)
        if gap > tol and phi_q - phi_p > 1e-13 and len(out) + len(stack) < max_points:
            t_mid = math.tan(0.5 * (phi_p + phi_q))
            new = [s for s in pencil.points_at(t_mid) if key(p) < key(s) < key(q)]
            if new:
                stack.extend(sorted(new, key=key, reverse=True))
                continue
        out.append(stack.pop())
    return out


@dataclass
class FeasibilityRegion:
    """Traced curves, refined boundary samples, witnesses and the boundary hull.

    For a 2-vertex graph the region is a circle: ``boundary`` holds the
    sampled circle, the sample lists are empty and there is no hull.
    """

    lower: UncertaintyCurve
    upper: UncertaintyCurve | None
    lower_boundary: list[DucSample]
    upper_boundary: list[DucSample]
    boundary: np.ndarray
    witnesses: np.ndarray
    lambda_max: float
    min_sum_bound: float
    hull: ConvexHull | None = field(default=None, repr=False)
    metadata: dict = field(default_factory=dict)

    def hull_excess(self, points) -> np.ndarray:
        """Signed distance outside the boundary hull (``<= 0`` means inside)."""
        if self.hull is None:
            raise DomainError("no hull: the region of a 2-vertex graph is a circle")
        pts = np.atleast_2d(points)
        eq = self.hull.equations
        return np.max(pts @ eq[:, :2].T + eq[:, 2], axis=1)


def spectral_pairs(b: GraphBasis, g) -> np.ndarray:
    """Rows ``(<g, Lambda g>, <g, L g>)`` for each row of ``g``."""
    g = np.atleast_2d(g)
    return np.column_stack([np.sum(g * g * b.lambdas, axis=1), np.sum(g * (g @ b.laplacian), axis=1)])


def circle_points(b: GraphBasis, num=64) -> np.ndarray:
    """``(||D f||^2, ||D fhat||^2)`` for ``f = (cos t, sin t)`` on a 2-vertex graph."""
    if b.n != 2:
        raise DomainError("the circle parametrization applies to 2-vertex graphs only")
    theta = 2 * np.pi * np.arange(num) / num
    f = np.vstack([np.cos(theta), np.sin(theta)])
    x = np.sum(difference(b, f) ** 2, axis=0)
    y = np.sum(difference(b, gft(b, f)) ** 2, axis=0)
    return np.column_stack([x, y])


def feasibility_region(b: GraphBasis, num_curve_points: int = 32, num_samples: int = 1000,
                       seed=0, config: SolverConfig | None = None, workers: int = 1,
                       refine_tol: float = REFINE_TOL) -> FeasibilityRegion:
    """Lower and upper boundary, a refined boundary polygon and random witnesses."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((num_samples, b.n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    witnesses = spectral_pairs(b, g)
    lam0 = additive_bounds(b).lower
    lower = duc_curve(b, num_curve_points, config, workers, LOWER)
    meta = {"upper_boundary": UPPER_METHOD, "refine_tol": refine_tol}
    if b.n == 2:
        meta["circle"] = True
        return FeasibilityRegion(lower, None, [], [], circle_points(b), witnesses, b.lambda_max,
                                 lam0, None, meta)
    upper = duc_curve(b, num_curve_points, config, workers, UPPER)
    pieces = []
    for curve in (lower, upper):
        pencil = _Pencil(b, curve.side, config)
        seeds = list(curve.samples) + [curve.left_end, curve.right_end, curve.alpha0]
        pieces.append(refine_boundary(pencil, seeds, refine_tol))
    lower_b, upper_b = pieces
    boundary = np.array([(s.x, s.y) for s in lower_b + upper_b[::-1]])
    return FeasibilityRegion(lower, upper, lower_b, upper_b, boundary, witnesses, b.lambda_max,
                             lam0, ConvexHull(boundary), meta)


# -- property checks ----------------------------------------------------------

def level_set_samples(delta, x: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit vectors ``g`` with ``sum(delta * g**2) == x`` (to rounding).

    Each sample lies on a random great circle through a Gaussian direction; if
    that circle misses the level set, it is swapped for one through the
    coordinate vector of the smallest or largest ``delta``.
    """
    delta = np.asarray(delta, dtype=float)
    n = len(delta)
    if not delta.min() <= x <= delta.max():
        raise DomainError(f"level {x} outside [{delta.min()}, {delta.max()}]")
    u = rng.standard_normal((count, n))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    v = rng.standard_normal((count, n))

    def circle(v):
        v = v - np.sum(v * u, axis=1, keepdims=True) * u
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        a, bb, c = u * u @ delta, v * v @ delta, u * v @ delta
        return v, a, 0.5 * (a + bb), 0.5 * (a - bb), c

    v, a, mid, half, c = circle(v)
    radius = np.hypot(half, c)
    # the circle through e_min / e_max reaches the extreme level up to rounding
    miss = np.abs(x - mid) > radius + 1e-14 * max(1.0, abs(x))
    if miss.any():
        e = np.zeros((int(miss.sum()), n))
        e[np.arange(len(e)), np.where(x < a[miss], np.argmin(delta), np.argmax(delta))] = 1.0
        v_new = v.copy()
        v_new[miss] = e
        v2, _, mid2, half2, c2 = circle(v_new)
        v[miss], mid[miss], half[miss], c[miss] = v2[miss], mid2[miss], half2[miss], c2[miss]
        radius = np.hypot(half, c)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_arg = np.where(radius > 0, (x - mid) / radius, 1.0)
    t = 0.5 * (np.arctan2(c, half) + np.arccos(np.clip(cos_arg, -1.0, 1.0)))
    return np.cos(t)[:, None] * u + np.sin(t)[:, None] * v


def sufficiency_violation(b: GraphBasis, alpha: float, count: int, rng: np.random.Generator,
                          mult_tol=None) -> float:
    """``max(<nu, L nu> - <g, L g>)`` over random unit ``g`` at the level of a unit ``nu`` in sigma(alpha).

    Non-positive up to rounding when every ``nu`` in the minimal eigenspace
    attains the lower boundary.
    """
    _, basis = min_eigpair(b, alpha, mult_tol)
    c = rng.standard_normal(basis.shape[1])
    nu = basis @ (c / np.linalg.norm(c))
    x = float(nu @ (b.lambdas * nu))
    y = float(nu @ (b.laplacian @ nu))
    g = level_set_samples(b.lambdas, x, count, rng)
    return float(np.max(y - np.sum(g * (g @ b.laplacian), axis=1)))
