"""Largest planar k-gon under pairwise distance caps.

Each start runs a quadratic-penalty Nelder-Mead ascent (multiplier raised
geometrically over the penalty rounds), is polished by SLSQP with the caps
as explicit constraints, and is finally made feasible by a uniform shrink
toward the centroid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from ..errors import DomainError
from ..oracle.config import SearchConfig, merge_best, penalty_schedule, run_starts, start_rng

SYMMETRY_TOL = 1e-12
FEAS_TOL = 1e-9

DEFAULT_CONFIG = SearchConfig(seed=0, starts=16, inner_iterations=600, initial_step=0.2, penalty_rounds=7)


@dataclass(frozen=True)
class CapMatrix:
    caps: np.ndarray

    def __post_init__(self):
        c = np.array(self.caps, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise DomainError("cap matrix must be square")
        if c.shape[0] < 3:
            raise DomainError("need k >= 3 vertices")
        if not np.allclose(c, c.T, rtol=0.0, atol=SYMMETRY_TOL):
            raise DomainError("cap matrix must be symmetric")
        off = c[~np.eye(len(c), dtype=bool)]
        if not (np.all(np.isfinite(off)) and np.all(off > 0)):
            raise DomainError("off-diagonal caps must be positive and finite")
        c = 0.5 * (c + c.T)
        np.fill_diagonal(c, 0.0)
        object.__setattr__(self, "caps", c)

    @property
    def k(self) -> int:
        return len(self.caps)

    @classmethod
    def uniform(cls, k: int, cap: float = 1.0) -> "CapMatrix":
        if k < 3:
            raise DomainError("need k >= 3 vertices")
        return cls(np.full((k, k), float(cap)))

    @classmethod
    def parse(cls, text: str) -> "CapMatrix":
        """Plain text: first line k, then k rows of k decimals."""
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        try:
            k = int(lines[0][0])
            rows = [[float(v) for v in ln] for ln in lines[1 : k + 1]]
        except (IndexError, ValueError) as exc:
            raise DomainError(f"malformed cap matrix: {exc}") from None
        if len(lines) != k + 1 or len(lines[0]) != 1 or any(len(r) != k for r in rows):
            raise DomainError("cap matrix file must hold k and then k rows of k values")
        return cls(np.array(rows))

    @classmethod
    def read(cls, path: str | Path) -> "CapMatrix":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        rows = [" ".join(repr(float(v)) for v in row) for row in self.caps]
        return "\n".join([str(self.k), *rows]) + "\n"


def hull_area_fast(xy: np.ndarray) -> tuple[float, list[int]]:
    """Hull area and CCW hull indices; 0 and [] for degenerate input."""
    pts = xy.tolist()
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(idx):
        out = []
        for i in idx:
            while len(out) >= 2 and cross(pts[out[-2]], pts[out[-1]], pts[i]) <= 0.0:
                out.pop()
            out.append(i)
        return out

    hull = chain(order)[:-1] + chain(order[::-1])[:-1]
    if len(hull) < 3:
        return 0.0, []
    s = 0.0
    for a, b in zip(hull, hull[1:] + hull[:1]):
        s += pts[a][0] * pts[b][1] - pts[b][0] * pts[a][1]
    return 0.5 * s, hull


def _hull_area_grad(xy: np.ndarray) -> tuple[float, np.ndarray]:
    area, hull = hull_area_fast(xy)
    g = np.zeros_like(xy)
    m = len(hull)
    for t, i in enumerate(hull):
        nxt, prv = hull[(t + 1) % m], hull[t - 1]
        g[i, 0] = 0.5 * (xy[nxt, 1] - xy[prv, 1])
        g[i, 1] = 0.5 * (xy[prv, 0] - xy[nxt, 0])
    return area, g


class _Problem:
    """Pair bookkeeping for caps with an optional set of pairs held at equality."""

    def __init__(self, caps: np.ndarray, equal: np.ndarray | None = None):
        self.caps = caps
        self.k = len(caps)
        iu, ju = np.triu_indices(self.k, 1)
        self.i, self.j = iu, ju
        self.cap = caps[iu, ju]
        eq = np.zeros(len(iu), dtype=bool) if equal is None else np.asarray(equal, bool)[iu, ju]
        self.eq = eq
        self.pairs = list(zip(iu.tolist(), ju.tolist(), self.cap.tolist(), eq.tolist()))

    def dists(self, xy: np.ndarray) -> np.ndarray:
        d = xy[self.i] - xy[self.j]
        return np.sqrt(np.einsum("ij,ij->i", d, d))

    def violation(self, xy: np.ndarray) -> float:
        d = self.dists(xy)
        over = np.maximum(d - self.cap, 0.0)
        gap = np.where(self.eq, np.abs(d - self.cap), over)
        return float(gap.max(initial=0.0))

    def penalised(self, flat: np.ndarray, mu: float) -> float:
        xy = flat.reshape(self.k, 2)
        pts = xy.tolist()
        pen = 0.0
        for i, j, cap, eq in self.pairs:
            d = math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]) - cap
            if eq or d > 0.0:
                pen += d * d
        return -hull_area_fast(xy)[0] + mu * pen

    def repair(self, xy: np.ndarray) -> np.ndarray:
        d = self.dists(xy)
        ratio = np.min(np.where(d > self.cap, self.cap / np.maximum(d, 1e-300), 1.0))
        if ratio >= 1.0:
            return xy
        # shrink slightly past the binding cap so rounding cannot re-violate it
        s = ratio * (1.0 - 4e-16)
        c = xy.mean(axis=0)
        return c + s * (xy - c)

    def polish(self, xy: np.ndarray) -> np.ndarray:
        k = self.k
        ii, jj = self.i, self.j

        def obj(flat):
            a, g = _hull_area_grad(flat.reshape(k, 2))
            return -a, -g.ravel()

        def sq(flat):
            p = flat.reshape(k, 2)
            diff = p[ii] - p[jj]
            return np.einsum("ij,ij->i", diff, diff), diff

        def jac_sq(diff):
            jac = np.zeros((len(ii), k, 2))
            rows = np.arange(len(ii))
            jac[rows, ii] = 2 * diff
            jac[rows, jj] = -2 * diff
            return jac.reshape(len(ii), 2 * k)

        ineq = ~self.eq
        cons = [
            {
                "type": "ineq",
                "fun": lambda f: (self.cap**2 - sq(f)[0])[ineq],
                "jac": lambda f: -jac_sq(sq(f)[1])[ineq],
            }
        ]
        if self.eq.any():
            cons.append(
                {
                    "type": "eq",
                    "fun": lambda f: (sq(f)[0] - self.cap**2)[self.eq],
                    "jac": lambda f: jac_sq(sq(f)[1])[self.eq],
                }
            )
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = minimize(obj, xy.ravel(), jac=True, method="SLSQP", constraints=cons,
                           options={"maxiter": 500, "ftol": 1e-15})
        out = res.x.reshape(k, 2)
        return out if np.all(np.isfinite(out)) else xy


def _one_start(caps, equal, cfg: SearchConfig, start: int):
    prob = _Problem(caps, equal)
    rng = start_rng(cfg.seed, start)
    radius = float(caps.max()) / 2.0
    ang = rng.uniform(0.0, 2.0 * math.pi, prob.k)
    rad = radius * np.sqrt(rng.uniform(0.0, 1.0, prob.k))
    x = np.column_stack([rad * np.cos(ang), rad * np.sin(ang)]).ravel()
    step = cfg.initial_step * radius
    evals = 0
    for mu in penalty_schedule(cfg.penalty_rounds):
        simplex = np.vstack([x, x + step * np.eye(len(x))])
        res = minimize(prob.penalised, x, args=(mu,), method="Nelder-Mead",
                       options={"maxiter": cfg.inner_iterations, "initial_simplex": simplex,
                                "xatol": 1e-12, "fatol": 1e-14})
        x, evals = res.x, evals + res.nfev
        step *= cfg.shrink_factor
    xy = x.reshape(prob.k, 2)
    candidates = [prob.repair(xy), prob.repair(prob.polish(xy))]
    best = None
    for cand in candidates:
        area = hull_area_fast(cand)[0]
        ok = prob.violation(cand) <= (1e-6 if prob.eq.any() else FEAS_TOL)
        key = (ok, area)
        if best is None or key > best[0]:
            best = (key, cand)
    (ok, area), xy = best
    return area if ok else -math.inf, xy, evals


def search_polygon(caps: np.ndarray, equal: np.ndarray | None, cfg: SearchConfig):
    """Multistart driver shared by the cap-matrix and diameter-graph problems."""
    args = [(caps, equal, cfg, s) for s in range(cfg.starts)]
    results = run_starts(_one_start, args, cfg.workers)
    values = [r[0] for r in results]
    best = merge_best(values)
    return values[best], results[best][1], values, sum(r[2] for r in results)


def maximize_capped_polygon(D: CapMatrix | np.ndarray, cfg: SearchConfig | None = None):
    """Largest k-gon with |P_i P_j| <= D_ij; returns (points, area)."""
    cm = D if isinstance(D, CapMatrix) else CapMatrix(D)
    cfg = cfg or DEFAULT_CONFIG
    area, pts, _, _ = search_polygon(cm.caps, None, cfg)
    return pts, area
