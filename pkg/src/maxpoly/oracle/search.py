"""Multistart compass search over raw point coordinates.

This is the independent check on the analytic optima: it knows nothing
about pentagons or simplices, only hull area/volume and distance caps.
All starts advance in lockstep as rows of one array, and every decision is
made per row, so a row's trajectory does not depend on which other rows
share its batch.
"""

from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np

from .. import geomkit
from ..errors import DegenerateHullError, DomainError
from .config import SearchConfig, SearchResult, merge_best, penalty_schedule, run_starts, start_rng

FEAS_TOL = 1e-9
MIN_STEP = 1e-8
TIE_EPS = 1e-12


def _sum_last(a: np.ndarray) -> np.ndarray:
    return a.sum(axis=-1)


class _Pairs:
    def __init__(self, caps: np.ndarray):
        k = len(caps)
        self.i, self.j = np.array(list(combinations(range(k), 2))).T
        self.cap = caps[self.i, self.j]

    def distances(self, X: np.ndarray) -> np.ndarray:
        d = X[:, self.i, :] - X[:, self.j, :]
        return np.sqrt(_sum_last(d * d))

    def penalty(self, X: np.ndarray) -> np.ndarray:
        over = np.maximum(self.distances(X) - self.cap, 0.0)
        return _sum_last(over * over)

    def violation(self, pts: np.ndarray) -> float:
        d = self.distances(pts[None])[0]
        return float(np.max(d - self.cap, initial=-math.inf))

    def repair(self, pts: np.ndarray) -> np.ndarray:
        d = self.distances(pts[None])[0]
        over = d > self.cap
        if not over.any():
            return pts
        s = float(np.min(self.cap[over] / d[over])) * (1.0 - 4e-16)
        c = pts.mean(axis=0)
        return c + s * (pts - c)


def _others(groups: list[tuple[int, ...]], k: int) -> np.ndarray:
    return np.array([[m for m in range(k) if m not in g] for g in groups])


class _Area2D:
    """Batched convex-hull area: directed edge i->j is on the hull when every other point is strictly left."""

    def __init__(self, k: int):
        edges = list(permutations(range(k), 2))
        self.a = np.array([e[0] for e in edges])
        self.b = np.array([e[1] for e in edges])
        self.o = _others(edges, k)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        xs, ys = X[..., 0], X[..., 1]
        ax, ay, bx, by = xs[:, self.a], ys[:, self.a], xs[:, self.b], ys[:, self.b]
        ex, ey = bx - ax, by - ay
        ox = xs[:, self.o] - ax[..., None]
        oy = ys[:, self.o] - ay[..., None]
        lo = (ex[..., None] * oy - ey[..., None] * ox).min(axis=-1)
        on_hull = lo > TIE_EPS
        ties = (lo > -TIE_EPS) & ~on_hull
        area = 0.5 * _sum_last(np.where(on_hull, ax * by - bx * ay, 0.0))
        for row in np.flatnonzero(ties.any(axis=-1)):
            area[row] = _exact_area(X[row])
        return area


def _exact_area(pts: np.ndarray) -> float:
    try:
        return geomkit.hull_area_2d(pts)
    except DegenerateHullError:
        return 0.0


class _Volume3D:
    """Batched convex-hull volume: triangle ijk is a facet when all other points lie strictly on one side."""

    def __init__(self, n: int):
        tri = list(combinations(range(n), 3))
        self.t = np.array(tri).T
        self.o = _others(tri, n)

    def __call__(self, X: np.ndarray) -> np.ndarray:
        xs, ys, zs = X[..., 0], X[..., 1], X[..., 2]
        i, j, k = self.t
        ax, ay, az = xs[:, i], ys[:, i], zs[:, i]
        ux, uy, uz = xs[:, j] - ax, ys[:, j] - ay, zs[:, j] - az
        vx, vy, vz = xs[:, k] - ax, ys[:, k] - ay, zs[:, k] - az
        nx, ny, nz = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
        side = (nx[..., None] * (xs[:, self.o] - ax[..., None])
                + ny[..., None] * (ys[:, self.o] - ay[..., None])
                + nz[..., None] * (zs[:, self.o] - az[..., None]))
        pos, neg = side.min(axis=-1), side.max(axis=-1)
        facet = (pos > TIE_EPS) | (neg < -TIE_EPS)
        ties = ~facet & ((pos > -TIE_EPS) | (neg < TIE_EPS))
        cx, cy, cz = (xs.mean(axis=1)[:, None], ys.mean(axis=1)[:, None], zs.mean(axis=1)[:, None])
        # (a - c) . n is the triple product det(a - c, b - c, c_k - c)
        det = nx * (ax - cx) + ny * (ay - cy) + nz * (az - cz)
        vol = _sum_last(np.where(facet, np.abs(det), 0.0)) / 6.0
        for row in np.flatnonzero(ties.any(axis=-1)):
            vol[row] = _exact_volume(X[row])
        return vol


def _exact_volume(pts: np.ndarray) -> float:
    try:
        return geomkit.hull_volume_3d(pts)[0]
    except DegenerateHullError:
        return 0.0


def compass_search(X, objective, step, shrink: float, max_sweeps: int, min_step: float = MIN_STEP):
    """Coordinate-wise pattern search on every row of X at once.

    Each row tries +step then -step along every coordinate in turn and keeps
    any improvement. After a successful sweep the row also tries the
    Hooke-Jeeves pattern point (repeat the sweep's net displacement, doubling
    while it keeps improving); a sweep with no improvement shrinks that row's
    step. Returns (X, values, evaluations).
    """
    X = X.copy()
    step = np.asarray(step, float).copy()
    S, D = X.shape
    F = objective(X)
    evals = S
    for _ in range(max_sweeps):
        idx = np.flatnonzero(step >= min_step)
        if idx.size == 0:
            break
        base = X[idx].copy()
        moved = np.zeros(idx.size, dtype=bool)
        for d in range(D):
            pending = np.ones(idx.size, dtype=bool)
            for sign in (1.0, -1.0):
                rows = idx[pending]
                if rows.size == 0:
                    break
                trial = X[rows].copy()
                trial[:, d] += sign * step[rows]
                ft = objective(trial)
                evals += rows.size
                better = ft > F[rows]
                X[rows[better]] = trial[better]
                F[rows[better]] = ft[better]
                hit = np.flatnonzero(pending)[better]
                moved[hit] = True
                pending[hit] = False
        sel = np.flatnonzero(moved)
        delta = X[idx[sel]] - base[sel]
        while sel.size:
            rows = idx[sel]
            trial = X[rows] + delta
            ft = objective(trial)
            evals += rows.size
            better = ft > F[rows]
            X[rows[better]] = trial[better]
            F[rows[better]] = ft[better]
            sel, delta = sel[better], 2.0 * delta[better]
        step[idx[~moved]] *= shrink
    return X, F, evals


def _penalised_runs(X0, value_fn, pairs: _Pairs, cfg: SearchConfig, scale: float):
    S = X0.shape[0]
    shape = X0.shape[1:]
    X = X0.reshape(S, -1)
    evals = 0
    for rnd, mu in enumerate(penalty_schedule(cfg.penalty_rounds)):
        def objective(flat, mu=mu):
            P = flat.reshape((-1,) + shape)
            return value_fn(P) - mu * pairs.penalty(P)

        step = np.full(S, cfg.initial_step * scale * cfg.shrink_factor**rnd)
        X, _, e = compass_search(X, objective, step, cfg.shrink_factor, cfg.inner_iterations)
        evals += e
    return X.reshape((S,) + shape), evals


def _sample_ball(rng, count: int, dim: int, radius: float) -> np.ndarray:
    v = rng.normal(size=(count, dim))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    rad = radius * rng.uniform(0.0, 1.0, count) ** (1.0 / dim)
    return v * rad[:, None]


def _chunk_task(kind: str, caps: np.ndarray, dim: int, cfg: SearchConfig, starts: list[int]):
    pairs = _Pairs(caps)
    k = len(caps)
    radius = float(caps.max()) / 2.0
    X0 = np.stack([_sample_ball(start_rng(cfg.seed, s), k, dim, radius) for s in starts])
    value_fn = _Area2D(k) if kind == "polygon" else _Volume3D(k)
    X, evals = _penalised_runs(X0, value_fn, pairs, cfg, radius)
    out = []
    for pts in X:
        pts = pairs.repair(pts)
        # value re-measured with the exact hull code, independent of the batched kernel
        value = _exact_area(pts) if kind == "polygon" else _exact_volume(pts)
        out.append((value, pts, pairs.violation(pts)))
    return out, evals


def _run(kind: str, caps: np.ndarray, dim: int, cfg: SearchConfig) -> SearchResult:
    starts = list(range(cfg.starts))
    chunks = [starts[w :: cfg.workers] for w in range(cfg.workers)]
    chunks = [c for c in chunks if c]
    pieces = run_starts(_chunk_task, [(kind, caps, dim, cfg, c) for c in chunks], cfg.workers)
    per_start: dict[int, tuple] = {}
    evals = 0
    for chunk, (res, e) in zip(chunks, pieces):
        evals += e
        per_start.update(zip(chunk, res))
    ordered = [per_start[s] for s in starts]
    values = [v if viol <= FEAS_TOL else -math.inf for v, _, viol in ordered]
    best = merge_best(values)
    value, pts, viol = ordered[best]
    return SearchResult(
        best_value=values[best],
        best_points=pts,
        feasible=bool(viol <= FEAS_TOL),
        per_start_values=[v for v, _, _ in ordered],
        evaluations=evals,
        max_violation=max(viol, 0.0),
    )


def search_max_area_polygon(D, cfg: SearchConfig | None = None) -> SearchResult:
    """Largest hull area of k planar points with |P_i P_j| <= D_ij."""
    caps = np.array(getattr(D, "caps", D), dtype=float)
    if caps.ndim != 2 or caps.shape[0] != caps.shape[1] or len(caps) < 3:
        raise DomainError("need a square cap matrix with k >= 3")
    return _run("polygon", caps, 2, cfg or SearchConfig())


def search_max_volume_3d(point_count: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Largest hull volume of ``point_count`` points in R^3 with diameter at most 1."""
    if int(point_count) != point_count or point_count < 4:
        raise DomainError("need at least 4 points")
    caps = np.ones((int(point_count),) * 2)
    np.fill_diagonal(caps, 0.0)
    return _run("polytope3d", caps, 3, cfg or SearchConfig())


def independent_violation(points: np.ndarray, caps: np.ndarray) -> float:
    """Largest cap excess recomputed pair by pair in plain Python."""
    worst = -math.inf
    k = len(points)
    for i in range(k):
        for j in range(i + 1, k):
            worst = max(worst, math.dist(points[i], points[j]) - caps[i][j])
    return worst
