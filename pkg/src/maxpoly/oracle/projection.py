"""Randomised check of the projection step for octahedral-type polyhedra.

Projecting the four equatorial vertices onto the plane bisecting PQ can
only shrink distances, and leaves the volume unchanged because every
tetrahedron P Q P_i P_j keeps its cross-section perpendicular to PQ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from ..geomkit import hull_volume_3d
from .config import SearchConfig, start_rng

DIST_SLACK = 1e-12
VOLUME_TOL = 1e-9


@dataclass
class ProjectionReport:
    trials: int
    distance_increases: int = 0
    volume_changes: int = 0
    rejected_samples: int = 0
    max_volume_change: float = 0.0
    max_distance_increase: float = -math.inf
    failures: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.distance_increases == 0 and self.volume_changes == 0

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "passed": self.passed,
            "distanceIncreases": self.distance_increases,
            "volumeChanges": self.volume_changes,
            "maxVolumeChange": self.max_volume_change,
            "maxDistanceIncrease": self.max_distance_increase,
            "rejectedSamples": self.rejected_samples,
        }


def project_to_bisector(points: np.ndarray, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Zero the PQ-axial component of each point, measured from the midpoint of PQ."""
    u = (q - p) / np.linalg.norm(q - p)
    mid = 0.5 * (p + q)
    return points - np.outer((points - mid) @ u, u)


def is_octahedral(pts: np.ndarray) -> bool:
    """Hull is an octahedron with vertices 0, 1 opposite and 2..5 each adjacent to both."""
    try:
        _, mesh = hull_volume_3d(pts)
    except ValueError:
        return False
    if len(mesh.hull_vertex_indices) != 6 or len(mesh.facets) != 8:
        return False
    if (0, 1) in mesh.edges:
        return False
    return all((0, m) in mesh.edges and (1, m) in mesh.edges for m in range(2, 6))


def _sample(rng: np.random.Generator, flat: bool) -> np.ndarray:
    h = rng.uniform(0.3, 1.0)
    gaps = rng.dirichlet(np.ones(4)) * 2 * math.pi
    theta = rng.uniform(0, 2 * math.pi) + np.cumsum(gaps)
    rad = rng.uniform(0.15, 0.5, 4)
    z = np.zeros(4) if flat else rng.uniform(-0.35, 0.35, 4) * h
    ring = np.column_stack([rad * np.cos(theta), rad * np.sin(theta), z])
    pts = np.vstack([[0, 0, h / 2], [0, 0, -h / 2], ring])
    rot = Rotation.random(random_state=rng).as_matrix()
    return pts @ rot.T + rng.uniform(-1, 1, 3)


def verify_projection_monotonicity(trials: int = 1000, cfg: SearchConfig | None = None,
                                   flat: bool = False) -> ProjectionReport:
    """Project random octahedral configurations and count distance or volume violations.

    ``flat`` puts the four points in the bisecting plane already, where the
    projection must be the identity.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    cfg = cfg or SearchConfig()
    report = ProjectionReport(trials)
    for t in range(trials):
        rng = start_rng(cfg.seed, t)
        while True:
            pts = _sample(rng, flat)
            p, q = pts[0], pts[1]
            proj = pts.copy()
            proj[2:] = project_to_bisector(pts[2:], p, q)
            if is_octahedral(pts) and is_octahedral(proj):
                break
            report.rejected_samples += 1
        worst = -math.inf
        for i in range(2, 6):
            for j in range(i + 1, 6):
                worst = max(worst, np.linalg.norm(proj[i] - proj[j]) - np.linalg.norm(pts[i] - pts[j]))
            before = max(np.linalg.norm(pts[i] - p), np.linalg.norm(pts[i] - q))
            after = max(np.linalg.norm(proj[i] - p), np.linalg.norm(proj[i] - q))
            worst = max(worst, after - before)
        report.max_distance_increase = max(report.max_distance_increase, worst)
        dv = abs(hull_volume_3d(proj)[0] - hull_volume_3d(pts)[0])
        report.max_volume_change = max(report.max_volume_change, dv)
        bad = False
        if worst > DIST_SLACK:
            report.distance_increases += 1
            bad = True
        if dv > VOLUME_TOL:
            report.volume_changes += 1
            bad = True
        if bad:
            report.failures.append(t)
    return report
