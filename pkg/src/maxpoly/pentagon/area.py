"""Area of the symmetric five-cycle pentagon and its maximiser.

Layout (before translating the apex to the origin)::

    P4 = (-1/2, y)                 P1 = (1/2, y)
                   P5 = (0, z)
         P3 = (-x, 0)    P2 = (x, 0)

with |P1P3| = |P2P4| = |P1P4| = 1 and |P5P2| = |P5P3| = r, so that
y = sqrt(1 - (1/2 + x)^2) and z = sqrt(r^2 - x^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, SearchError

R_MIN = 1.0 / math.sqrt(2.0)
R_MAX = 1.0
R_SLACK = 1e-12
BRACKET_EPS = 1e-9
BISECT_WIDTH = 1e-13

LABELS = ("P1", "P2", "P3", "P4", "P5")
APEX = 4
TIGHT_F_PATTERN = frozenset({(0, 2), (1, 3), (0, 3), (1, 4), (2, 4)})


def _check_r(r: float) -> float:
    r = float(r)
    if not (R_MIN - R_SLACK <= r <= R_MAX + R_SLACK):
        raise DomainError(f"r={r} outside [1/sqrt(2), 1]")
    return r


def area_A(r: float, x: float) -> float:
    """A(r, x) = x*sqrt(3 - 4x - 4x^2)/2 + sqrt(r^2 - x^2)/2."""
    r, x = float(r), float(x)
    disc = 3.0 - 4.0 * x - 4.0 * x * x
    if x < 0.0 or disc < 0.0 or x > r:
        raise DomainError(f"x={x} outside [0, min(1/2, r)] for r={r}")
    return 0.5 * x * math.sqrt(disc) + 0.5 * math.sqrt(r * r - x * x)


def dA_dx(r: float, x: float) -> float:
    s = math.sqrt(3.0 - 4.0 * x - 4.0 * x * x)
    return 0.5 * s + x * (-4.0 - 8.0 * x) / (4.0 * s) - x / (2.0 * math.sqrt(r * r - x * x))


def x0_of_r(r: float) -> float:
    """Interior stationary point of x -> A(r, x), found by bisection on dA/dx."""
    r = _check_r(r)
    r = min(max(r, R_MIN), R_MAX)
    lo = BRACKET_EPS
    hi = min(0.5, r) - BRACKET_EPS
    f_lo, f_hi = dA_dx(r, lo), dA_dx(r, hi)
    if not (f_lo > 0.0 > f_hi):
        raise SearchError(f"dA/dx has no sign change on [{lo}, {hi}] at r={r}")
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid = dA_dx(r, mid)
        if f_mid == 0.0:
            return mid
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class PentagonSolution:
    r: float
    x: float
    y: float
    z: float
    area: float
    points: np.ndarray  # rows P1..P5, P5 at the origin
    tight_pairs: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "area": self.area,
            "points": {lab: [float(c) for c in row] for lab, row in zip(LABELS, self.points)},
            "tightPairs": [list(p) for p in self.tight_pairs],
        }


def pentagon_caps(r: float) -> np.ndarray:
    """5x5 cap matrix: apex pairs capped at r, all other pairs at 1."""
    caps = np.ones((5, 5))
    caps[APEX, :] = caps[:, APEX] = r
    np.fill_diagonal(caps, 0.0)
    return caps


def pentagon_points(r: float, x: float) -> np.ndarray:
    y = math.sqrt(1.0 - (0.5 + x) ** 2)
    z = math.sqrt(r * r - x * x)
    pts = np.array([[0.5, y], [x, 0.0], [-x, 0.0], [-0.5, y], [0.0, z]])
    return pts - pts[APEX]


def tight_pairs(points: np.ndarray, caps: np.ndarray, tol: float = 1e-9) -> list[tuple[int, int]]:
    k = len(points)
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            if abs(np.linalg.norm(points[i] - points[j]) - caps[i, j]) <= tol:
                out.append((i, j))
    return out


def best_area(r: float, x: float | None = None) -> PentagonSolution:
    """Maximal symmetric pentagon for apex cap ``r``.

    Passing ``x`` evaluates the configuration at that abscissa instead of
    the optimum.
    """
    r = _check_r(r)
    x = x0_of_r(r) if x is None else float(x)
    area = area_A(r, x)
    pts = pentagon_points(r, x)
    pairs = tight_pairs(pts, pentagon_caps(r))
    return PentagonSolution(
        r=r,
        x=x,
        y=math.sqrt(1.0 - (0.5 + x) ** 2),
        z=math.sqrt(r * r - x * x),
        area=area,
        points=pts,
        tight_pairs=tuple((LABELS[i], LABELS[j]) for i, j in pairs),
    )
