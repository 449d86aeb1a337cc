"""Explicit vertex coordinates of the extremal polytopes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .formulas import r_of_n, v_n_plus_3, v_simplex
from .geomkit import PointSet
from .pentagon.area import best_area

TYPE_TAGS = ("simplex", "doublePyramid", "pyramidal", "octahedral")
_EXPECTED_COUNT = {"simplex": 1, "doublePyramid": 2, "pyramidal": 3, "octahedral": 3}


@dataclass(frozen=True)
class PolytopeSpec:
    n: int
    vertices: PointSet
    type_tag: str
    claimed_volume: float

    def __post_init__(self):
        if self.type_tag not in TYPE_TAGS:
            raise DomainError(f"unknown type tag {self.type_tag!r}")
        if self.vertices.dim != self.n or len(self.vertices) != self.n + _EXPECTED_COUNT[self.type_tag]:
            raise DomainError("vertex count does not match the combinatorial type")

    def as_dict(self) -> dict:
        labels = self.vertices.labels or tuple(f"V{i + 1}" for i in range(len(self.vertices)))
        return {
            "n": self.n,
            "typeTag": self.type_tag,
            "claimedVolume": self.claimed_volume,
            "vertices": [{"label": lab, "coords": [float(c) for c in row]}
                         for lab, row in zip(labels, self.vertices.points)],
        }


def helmert_basis(m: int) -> np.ndarray:
    """Orthonormal basis (m x (m+1)) of the hyperplane sum(x) = 0."""
    h = np.zeros((m, m + 1))
    for j in range(1, m + 1):
        h[j - 1, :j] = 1.0
        h[j - 1, j] = -float(j)
        h[j - 1] /= math.sqrt(j * (j + 1))
    return h


def simplex_circumradius(m: int, edge: float = 1.0) -> float:
    return edge * math.sqrt(m / (2.0 * (m + 1)))


def regular_simplex(m: int, edge: float = 1.0) -> np.ndarray:
    """m+1 vertices of a regular m-simplex in R^m, circumcentred at the origin."""
    if int(m) != m or m < 1:
        raise DomainError("simplex dimension must be a positive integer")
    if not edge > 0:
        raise DomainError("edge length must be positive")
    m = int(m)
    # scaled standard basis of R^(m+1) has pairwise distance `edge`
    return (edge / math.sqrt(2.0)) * helmert_basis(m).T


def _pentagon_quad(r: float) -> np.ndarray:
    """P1..P4 of the optimal pentagon with the apex P5 at the origin."""
    return best_area(r).points[:4]


def build_pyramidal_3d(h: float) -> PolytopeSpec:
    """Bipyramid with apexes at distance h over the best pentagon for r = sqrt(1 - h^2/4)."""
    h = float(h)
    if not 0.0 <= h <= 1.0:
        raise DomainError("h must lie in [0, 1]")
    r = math.sqrt(1.0 - h * h / 4.0)
    sol = best_area(r)
    quad = sol.points[:4]
    pts = np.zeros((6, 3))
    pts[0, 0], pts[1, 0] = h / 2.0, -h / 2.0
    pts[2:, 1:] = quad
    labels = ("P", "Q", "P1", "P2", "P3", "P4")
    return PolytopeSpec(3, PointSet(pts, labels), "pyramidal", h * sol.area / 3.0)


def build_optimal(n: int) -> PolytopeSpec:
    """Regular (n-2)-simplex joined orthogonally to the optimal pentagon for r = r_of_n(n)."""
    if int(n) != n or n < 3:
        raise DomainError("n must be an integer >= 3")
    n = int(n)
    simplex = regular_simplex(n - 2)
    quad = _pentagon_quad(r_of_n(n))
    pts = np.zeros((n + 3, n))
    pts[: n - 1, : n - 2] = simplex
    pts[n - 1 :, n - 2 :] = quad
    labels = tuple(f"S{i + 1}" for i in range(n - 1)) + ("P1", "P2", "P3", "P4")
    return PolytopeSpec(n, PointSet(pts, labels), "pyramidal", v_n_plus_3(n).volume)


def construction_volume(n: int) -> float:
    """Volume actually enclosed by ``build_optimal(n)``.

    The simplex and the pentagon span orthogonal subspaces and both contain
    the origin, so the hull is their free sum with volume
    (n-2)! 2! / n! * vol(simplex) * area(pentagon). This agrees with the
    claimed volume for n = 3 and is smaller for n >= 4.
    """
    if int(n) != n or n < 3:
        raise DomainError("n must be an integer >= 3")
    n = int(n)
    area = best_area(r_of_n(n)).area
    return 2.0 / (n * (n - 1)) * area * v_simplex(n - 2).volume


def regular_octahedron() -> PolytopeSpec:
    pts = np.array([[0.5, 0, 0], [-0.5, 0, 0], [0, 0.5, 0], [0, -0.5, 0], [0, 0, 0.5], [0, 0, -0.5]])
    labels = ("X+", "X-", "Y+", "Y-", "Z+", "Z-")
    return PolytopeSpec(3, PointSet(pts, labels), "octahedral", 1.0 / 6.0)


def reference_simplex(n: int) -> PolytopeSpec:
    return PolytopeSpec(n, PointSet(regular_simplex(n)), "simplex", v_simplex(n).volume)
