"""Plain floating-point geometry: polygon area, 2D/3D convex hulls, diameter.

These routines are used both to build the extremal configurations and to
check them independently, so they do not import anything else from the
package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateHullError, DomainError

TOL = 1e-9


@dataclass(frozen=True)
class PointSet:
    """Points of a common dimension, optionally labelled."""

    points: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        pts = as_points(self.points)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(pts):
                raise DomainError("one label per point required")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class HullMesh3D:
    """Triangulated boundary of a 3D convex hull.

    ``facets`` index into ``vertices`` and are oriented so that the normal
    ``(b - a) x (c - a)`` points away from the centroid.
    """

    vertices: np.ndarray
    facets: list[tuple[int, int, int]]
    edges: frozenset[tuple[int, int]] = field(init=False)

    def __post_init__(self):
        edges = set()
        for a, b, c in self.facets:
            for u, v in ((a, b), (b, c), (c, a)):
                edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(edges))

    @property
    def hull_vertex_indices(self) -> list[int]:
        return sorted({i for f in self.facets for i in f})

    def euler_characteristic(self) -> int:
        return len(self.hull_vertex_indices) - len(self.edges) + len(self.facets)

    def valence(self) -> dict[int, int]:
        deg = {i: 0 for i in self.hull_vertex_indices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def as_points(points, dim: int | None = None) -> np.ndarray:
    """Validate ``points`` and return them as a float64 (k, d) array."""
    if isinstance(points, PointSet):
        pts = points.points
    else:
        pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise DomainError(f"expected a non-empty (k, d) array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DomainError("coordinates must be finite")
    if dim is not None and pts.shape[1] != dim:
        raise DomainError(f"expected dimension {dim}, got {pts.shape[1]}")
    return pts


def signed_area(polygon) -> float:
    p = as_points(polygon, dim=2)
    x, y = p[:, 0], p[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def shoelace_area(polygon) -> float:
    """Area of a simple polygon given in boundary order (either orientation)."""
    p = as_points(polygon, dim=2)
    if len(p) < 3:
        raise DomainError("a polygon needs at least 3 points")
    return abs(signed_area(p))


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_indices_2d(points) -> list[int]:
    """Indices of the hull vertices in counterclockwise order (monotone chain)."""
    p = as_points(points, dim=2)
    if len(p) < 3:
        raise DomainError("at least 3 points required")
    order = sorted(range(len(p)), key=lambda i: (p[i, 0], p[i, 1], i))

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and _cross(p[out[-2]], p[out[-1]], p[i]) <= 0.0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    # second pass with tolerance: drop vertices that are nearly collinear or coincident
    changed = True
    while changed and len(hull) >= 3:
        changed = False
        for t in range(len(hull)):
            u, w, v = hull[t - 1], hull[t], hull[(t + 1) % len(hull)]
            if _cross(p[u], p[w], p[v]) <= TOL:
                hull.pop(t)
                changed = True
                break
    if len(hull) < 3:
        raise DegenerateHullError("all points are collinear")
    return hull


def convex_hull_2d(points) -> np.ndarray:
    """Extreme points of a planar set, counterclockwise, duplicates removed."""
    p = as_points(points, dim=2)
    return p[convex_hull_indices_2d(p)]


def hull_area_2d(points) -> float:
    return shoelace_area(convex_hull_2d(points))


def diameter(points) -> float:
    """Largest pairwise Euclidean distance (exact O(k^2) scan)."""
    p = as_points(points)
    if len(p) < 2:
        raise DomainError("diameter needs at least 2 points")
    diff = p[:, None, :] - p[None, :, :]
    return float(np.sqrt(np.max(np.einsum("ijk,ijk->ij", diff, diff))))


def _orient(p, a, b, c, d) -> float:
    """Six times the signed volume of tetrahedron abcd."""
    return float(np.dot(np.cross(p[b] - p[a], p[c] - p[a]), p[d] - p[a]))


def _initial_tetrahedron(p: np.ndarray) -> tuple[int, int, int, int]:
    n = len(p)
    i0 = 0
    dist = np.linalg.norm(p - p[i0], axis=1)
    i1 = int(np.argmax(dist))
    if dist[i1] <= TOL:
        raise DegenerateHullError("all points coincide")
    u = p[i1] - p[i0]
    area = np.linalg.norm(np.cross(u, p - p[i0]), axis=1)
    i2 = int(np.argmax(area))
    if area[i2] <= TOL:
        raise DegenerateHullError("all points are collinear")
    normal = np.cross(u, p[i2] - p[i0])
    vol = (p - p[i0]) @ normal
    i3 = int(np.argmax(np.abs(vol)))
    if abs(vol[i3]) <= TOL:
        raise DegenerateHullError("all points are coplanar")
    assert len({i0, i1, i2, i3}) == 4 and n >= 4
    return i0, i1, i2, i3


def _incremental_hull(p: np.ndarray) -> list[tuple[int, int, int]]:
    a, b, c, d = _initial_tetrahedron(p)
    if _orient(p, a, b, c, d) > 0:
        b, c = c, b
    # d now lies below plane (a, b, c): every face below is outward
    faces = {(a, b, c), (a, d, b), (b, d, c), (c, d, a)}

    def plane_dist(face, q):
        i, j, k = face
        nrm = np.cross(p[j] - p[i], p[k] - p[i])
        return float(np.dot(nrm, q - p[i])) / np.linalg.norm(nrm)

    for idx in range(len(p)):
        if idx in (a, b, c, d):
            continue
        q = p[idx]
        visible = [f for f in faces if plane_dist(f, q) > TOL]
        if not visible:
            continue
        directed = set()
        for i, j, k in visible:
            directed.update(((i, j), (j, k), (k, i)))
        horizon = [(u, v) for (u, v) in directed if (v, u) not in directed]
        faces.difference_update(visible)
        for u, v in horizon:
            faces.add((u, v, idx))
    return sorted(faces)


def _retriangulate_coplanar(p: np.ndarray, faces) -> list[tuple[int, int, int]]:
    """Merge coplanar adjacent triangles and fan them from the lowest index."""
    faces = list(faces)
    normals = []
    for i, j, k in faces:
        nrm = np.cross(p[j] - p[i], p[k] - p[i])
        normals.append(nrm / np.linalg.norm(nrm))
    parent = list(range(len(faces)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    edge_owner = {}
    for fi, (i, j, k) in enumerate(faces):
        for e in ((i, j), (j, k), (k, i)):
            edge_owner[e] = fi
    for (u, v), fi in edge_owner.items():
        fj = edge_owner.get((v, u))
        if fj is None:
            continue
        i, j, k = faces[fj]
        far = next(w for w in (i, j, k) if w not in (u, v))
        if abs(np.dot(normals[fi], p[far] - p[u])) <= TOL:
            parent[find(fi)] = find(fj)

    groups: dict[int, list[int]] = {}
    for fi in range(len(faces)):
        groups.setdefault(find(fi), []).append(fi)

    out = []
    for members in groups.values():
        if len(members) == 1:
            out.append(faces[members[0]])
            continue
        normal = normals[members[0]]
        verts = sorted({w for fi in members for w in faces[fi]})
        centre = p[verts].mean(axis=0)
        e1 = p[verts[0]] - centre
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        flat = (p[verts] - centre) @ np.column_stack([e1, e2])
        # planar hull drops points inside the face or on its edges
        ring = [verts[t] for t in convex_hull_indices_2d(flat)]
        s = ring.index(min(ring))
        ring = ring[s:] + ring[:s]
        for t in range(1, len(ring) - 1):
            out.append((ring[0], ring[t], ring[t + 1]))
    return sorted(out)


def convex_hull_3d(points) -> HullMesh3D:
    p = as_points(points, dim=3)
    if len(p) < 4:
        raise DegenerateHullError("a 3D hull needs at least 4 points")
    faces = _retriangulate_coplanar(p, _incremental_hull(p))
    return HullMesh3D(vertices=p, facets=faces)


def hull_volume_3d(points) -> tuple[float, HullMesh3D]:
    """Volume of the convex hull of a 3D point set, together with its mesh."""
    mesh = convex_hull_3d(points)
    p = mesh.vertices
    centre = p[mesh.hull_vertex_indices].mean(axis=0)
    tri = np.array(mesh.facets)
    a, b, c = p[tri[:, 0]] - centre, p[tri[:, 1]] - centre, p[tri[:, 2]] - centre
    vol = float(np.sum(np.einsum("ij,ij->i", np.cross(a, b), c))) / 6.0
    return vol, mesh


def tetrahedron_volume(a, b, c, d) -> float:
    return abs(float(np.linalg.det(np.array([b, c, d], float) - np.asarray(a, float)))) / 6.0


def cayley_menger_volume(points: Sequence) -> float:
    """Simplex volume from pairwise distances only (any dimension)."""
    p = as_points(points)
    m = len(p) - 1
    d2 = np.sum((p[:, None, :] - p[None, :, :]) ** 2, axis=-1)
    cm = np.ones((m + 2, m + 2))
    cm[0, 0] = 0.0
    cm[1:, 1:] = d2
    coeff = (-1) ** (m + 1) / (2**m * math.factorial(m) ** 2)
    return float(np.sqrt(max(coeff * np.linalg.det(cm), 0.0)))

