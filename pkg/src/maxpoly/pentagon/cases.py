"""The six possible diameter graphs of the apex pentagon.

Vertices are numbered 0..4. A graph edge means the pair sits exactly at its
cap (r if the apex is involved, 1 otherwise); a non-edge means the pair is
at most its cap. The drawings do not say which vertex is the apex, so every
apex position up to graph automorphism is tried.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np
from scipy.optimize import minimize

from ..errors import DomainError
from ..oracle.config import SearchConfig, merge_best, run_starts, start_rng
from .area import R_MAX, R_MIN, R_SLACK, best_area
from .capped import hull_area_fast, search_polygon

# frozen from the figure: (a) star, (b) star plus one leaf-leaf edge,
# (c) triangle with a pendant on two of its corners, (d) spider with legs
# 1, 1, 2, (e) path, (f) 5-cycle
WOODALL_EDGES: dict[str, tuple[tuple[int, int], ...]] = {
    "A": ((0, 1), (0, 2), (0, 3), (0, 4)),
    "B": ((0, 1), (0, 2), (0, 3), (0, 4), (1, 4)),
    "C": ((0, 1), (0, 2), (0, 3), (1, 3), (1, 4)),
    "D": ((0, 1), (1, 2), (1, 3), (0, 4)),
    "E": ((0, 1), (1, 2), (2, 3), (3, 4)),
    "F": ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)),
}
TAGS = tuple(WOODALL_EDGES)

CASE_CONFIG = SearchConfig(seed=0, starts=4, inner_iterations=150, initial_step=0.2, penalty_rounds=7)


@dataclass(frozen=True)
class DiameterGraphCase:
    tag: str
    edges: frozenset[tuple[int, int]]
    apex: int

    @classmethod
    def make(cls, tag: str, apex: int) -> "DiameterGraphCase":
        tag = tag.upper()
        if tag not in WOODALL_EDGES:
            raise DomainError(f"unknown case {tag!r}; expected one of {TAGS}")
        if apex not in range(5):
            raise DomainError("apex must be a vertex index 0..4")
        return cls(tag, frozenset(WOODALL_EDGES[tag]), apex)

    def cap_matrix(self, r: float) -> tuple[np.ndarray, np.ndarray]:
        caps = np.ones((5, 5))
        caps[self.apex, :] = caps[:, self.apex] = r
        np.fill_diagonal(caps, 0.0)
        eq = np.zeros((5, 5), dtype=bool)
        for i, j in self.edges:
            eq[i, j] = eq[j, i] = True
        return caps, eq


def degree_sequence(tag: str) -> tuple[int, ...]:
    deg = [0] * 5
    for i, j in WOODALL_EDGES[tag]:
        deg[i] += 1
        deg[j] += 1
    return tuple(sorted(deg, reverse=True))


@lru_cache(maxsize=None)
def apex_orbits(tag: str) -> tuple[int, ...]:
    """Lowest vertex of each automorphism orbit of the case graph."""
    edges = {frozenset(e) for e in WOODALL_EDGES[tag]}
    autos = [p for p in permutations(range(5)) if {frozenset((p[i], p[j])) for i, j in edges} == edges]
    reps = sorted({min(p[v] for p in autos) for v in range(5)})
    return tuple(reps)


def _check_r(r: float) -> float:
    if not (R_MIN - R_SLACK <= r <= R_MAX + R_SLACK):
        raise DomainError(f"r={r} outside [1/sqrt(2), 1]")
    return float(r)


def case_max(tag: str, r: float, cfg: SearchConfig | None = None) -> tuple[float, np.ndarray, int]:
    """Largest pentagon area realising diameter graph ``tag``.

    Returns (area, points, apex) with the apex index that attains it.
    """
    r = _check_r(r)
    cfg = cfg or CASE_CONFIG
    best = (-math.inf, None, -1)
    for apex in apex_orbits(tag.upper()):
        case = DiameterGraphCase.make(tag, apex)
        caps, eq = case.cap_matrix(r)
        area, pts, _, _ = search_polygon(caps, eq, cfg)
        if area > best[0]:
            best = (area, pts, apex)
    return best


# -- case (e): path with the apex in the middle ------------------------------
#
# Path F - R - T - L - E with T the apex at the origin, |TL| = |TR| = r,
# |LE| = |RF| = 1, L below-left and R below-right of T. All four path edges
# are diagonals of the convex pentagon F L R E T. beta is the angle LTR;
# alpha1 is the angle at which RF crosses LT, alpha2 the angle at which LE
# crosses RT.


@dataclass(frozen=True)
class CaseEAngles:
    alpha1: float
    alpha2: float
    beta: float

    def points(self, r: float) -> np.ndarray:
        """Rows T, L, R, E, F."""
        h = 0.5 * self.beta
        t = np.zeros(2)
        lft = r * np.array([-math.sin(h), -math.cos(h)])
        rgt = r * np.array([math.sin(h), -math.cos(h)])
        u = (t - lft) / r
        v = (t - rgt) / r
        e = lft + _rot(v, -self.alpha2)
        f = rgt + _rot(u, self.alpha1)
        return np.array([t, lft, rgt, e, f])


def _rot(v, ang):
    c, s = math.cos(ang), math.sin(ang)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1]])


# non-edges of the path T-L, T-R, L-E, R-F and their caps (index into rows T, L, R, E, F)
def _case_e_slacks(p: np.ndarray, r: float) -> np.ndarray:
    d = lambda a, b: float(np.hypot(*(p[a] - p[b])))
    return np.array([
        r - d(0, 3), r - d(0, 4),
        1 - d(1, 2), 1 - d(1, 4), 1 - d(2, 3), 1 - d(3, 4),
    ])


BOUNDARY_TOL = 1e-6
# counterclockwise order of the pentagon, as rows of CaseEAngles.points
PENTAGON_ORDER = (4, 1, 2, 3, 0)


def _turns(p: np.ndarray) -> np.ndarray:
    q = p[list(PENTAGON_ORDER)]
    a, b, c = q, np.roll(q, -1, axis=0), np.roll(q, -2, axis=0)
    return (b[:, 0] - a[:, 0]) * (c[:, 1] - b[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - b[:, 0])


def case_e_area(angles: CaseEAngles, r: float) -> float:
    """Area of the convex pentagon F L R E T.

    Returns -inf outside the domain: a cap violated, an angle outside
    (0, pi), or the pentagon not strictly convex in that order.
    """
    a = np.array([angles.alpha1, angles.alpha2, angles.beta])
    if np.any(a <= 0.0) or np.any(a >= math.pi):
        return -math.inf
    p = angles.points(r)
    if np.any(_case_e_slacks(p, r) < 0.0) or np.any(_turns(p) <= 0.0):
        return -math.inf
    q = p[list(PENTAGON_ORDER)]
    return 0.5 * float(np.dot(q[:, 0], np.roll(q[:, 1], -1)) - np.dot(np.roll(q[:, 0], -1), q[:, 1]))


def _on_boundary(angles: CaseEAngles, r: float) -> bool:
    a = np.array([angles.alpha1, angles.alpha2, angles.beta])
    if np.any(a <= BOUNDARY_TOL) or np.any(a >= math.pi - BOUNDARY_TOL):
        return True
    p = angles.points(r)
    return bool(np.min(_case_e_slacks(p, r)) <= BOUNDARY_TOL or np.min(_turns(p)) <= BOUNDARY_TOL)


def _random_interior(rng, r: float) -> CaseEAngles:
    while True:
        a = CaseEAngles(*rng.uniform(0.0, math.pi, 3))
        if case_e_area(a, r) > -math.inf and not _on_boundary(a, r):
            return a


def _ascend(fun, x0, maxiter: int, step: float = 0.05, restarts: int = 30):
    """Nelder-Mead with restarts from the incumbent until no further gain."""
    x = np.asarray(x0, float)
    fx = fun(x)
    for _ in range(restarts):
        res = minimize(fun, x, method="Nelder-Mead",
                       options={"maxiter": maxiter, "xatol": 1e-12, "fatol": 1e-15,
                                "initial_simplex": _simplex(x, step)})
        gain = fx - res.fun
        if res.fun < fx:
            x, fx = res.x, res.fun
        if gain <= 1e-14:
            break
    return x


def _case_e_start(r: float, seed: int, start: int, maxiter: int):
    rng = start_rng(seed, start)
    a0 = _random_interior(rng, r)
    x = _ascend(lambda v: -case_e_area(CaseEAngles(*v), r), [a0.alpha1, a0.alpha2, a0.beta], maxiter)
    end = CaseEAngles(*x)
    return case_e_area(end, r), end, _on_boundary(end, r)


def _simplex(x, step):
    x = np.asarray(x, float)
    return np.vstack([x, x + step * np.eye(len(x))])


@dataclass
class CaseEScan:
    r: float
    supremum: float
    all_on_boundary: bool
    finals: list[CaseEAngles]
    values: list[float]
    best_points: np.ndarray

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "supremum": self.supremum,
            "allOnBoundary": self.all_on_boundary,
            "fStarBound": best_area(self.r).area,
            "values": self.values,
        }


def case_e_scan(r: float, starts: int = 64, seed: int = 0, maxiter: int = 4000, workers: int = 1) -> CaseEScan:
    """Ascend from random interior angle triples and record where each run stops."""
    r = _check_r(r)
    if starts < 1:
        raise DomainError("starts must be positive")
    out = run_starts(_case_e_start, [(r, seed, s, maxiter) for s in range(starts)], workers)
    values = [o[0] for o in out]
    best = merge_best(values)
    return CaseEScan(
        r=r,
        supremum=values[best],
        all_on_boundary=all(o[2] for o in out),
        finals=[o[1] for o in out],
        values=values,
        best_points=out[best][1].points(r),
    )


def stationary_probe(r: float, beta: float, seed: int = 0, starts: int = 8) -> list[tuple[float, float]]:
    """Interior local maximisers in (alpha1, alpha2) with beta held fixed.

    Runs that end on a cap or at the edge of the angle domain are discarded;
    the remaining (alpha1, alpha2) pairs are returned, deduplicated.
    """
    r = _check_r(r)
    found: list[tuple[float, float]] = []
    for s in range(starts):
        rng = start_rng(seed, s)
        x0 = None
        for _ in range(1000):
            cand = rng.uniform(0.0, math.pi, 2)
            a = CaseEAngles(cand[0], cand[1], beta)
            if case_e_area(a, r) > -math.inf and not _on_boundary(a, r):
                x0 = cand
                break
        if x0 is None:
            continue
        fun = lambda v: -case_e_area(CaseEAngles(v[0], v[1], beta), r)
        x = _ascend(fun, x0, 4000)
        end = CaseEAngles(x[0], x[1], beta)
        if _on_boundary(end, r):
            continue
        v = (float(x[0]), float(x[1]))
        if not any(np.allclose(v, w, atol=1e-6) for w in found):
            found.append(v)
    return found
