import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize_scalar

from maxpoly import geomkit
from maxpoly.errors import DomainError
from maxpoly.pentagon import CapMatrix, area_A, best_area, maximize_capped_polygon, pentagon_caps, x0_of_r
from maxpoly.pentagon.area import R_MAX, R_MIN

r_values = st.floats(R_MIN, R_MAX)


def x0_oracle(r):
    # independent of the bisection: bounded Brent on -A
    hi = min(0.5, r)
    res = minimize_scalar(lambda x: -area_A(r, x), bounds=(0.0, hi), method="bounded",
                          options={"xatol": 1e-12})
    return res.x


# -- A(r, x) and x0(r) ---------------------------------------------------------


@pytest.mark.parametrize("r", np.linspace(R_MIN, R_MAX, 11))
def test_x0_matches_brent(r):
    assert x0_of_r(r) == pytest.approx(x0_oracle(r), abs=1e-7)


def test_x0_frozen_values():
    # [DERIVED] bisection to 1e-13, cross-checked against bounded Brent above
    assert x0_of_r(math.sqrt(3) / 2) == pytest.approx(0.3032046, abs=1e-6)
    assert x0_of_r(1 / math.sqrt(2)) == pytest.approx(0.2930393, abs=1e-6)
    assert x0_of_r(1.0) == pytest.approx(0.3090170, abs=1e-6)


def test_best_area_paper_values():
    # published value: 0.5862... at r = sqrt(3)/2 and 0.5002... in the limit r = 1/sqrt(2)
    assert best_area(math.sqrt(3) / 2).area == pytest.approx(0.5862, abs=5e-4)
    assert best_area(1 / math.sqrt(2)).area == pytest.approx(0.5002, abs=5e-4)
    assert math.floor(best_area(math.sqrt(3) / 2).area * 1e4) == 5862
    assert math.floor(best_area(1 / math.sqrt(2)).area * 1e4) == 5002


def test_r_one_is_regular_pentagon():
    # [DERIVED] unit-diagonal regular pentagon; x0 = sin(18 deg) is half its side
    R = 1 / (2 * math.sin(2 * math.pi / 5))
    regular = 2.5 * R * R * math.sin(2 * math.pi / 5)
    assert best_area(1.0).area == pytest.approx(regular, abs=1e-12)
    assert x0_of_r(1.0) == pytest.approx(math.sin(math.pi / 10), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(r_values)
def test_solution_geometry(r):
    sol = best_area(r)
    pts = sol.points
    caps = pentagon_caps(r)
    # shoelace of the coordinates reproduces the closed form
    assert geomkit.hull_area_2d(pts) == pytest.approx(sol.area, abs=1e-12)
    assert len(geomkit.convex_hull_indices_2d(pts)) == 5
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    assert np.all(d <= caps + 1e-12)
    assert np.allclose(pts[4], 0.0)
    # case (f): the five diagonals are tight
    assert len(sol.tight_pairs) >= 5
    assert {("P1", "P3"), ("P2", "P4"), ("P1", "P4"), ("P2", "P5"), ("P3", "P5")} <= set(sol.tight_pairs)


@settings(max_examples=60, deadline=None)
@given(r_values, st.floats(0.0, 0.5))
def test_x0_is_maximiser(r, x):
    if x > r:
        return
    assert area_A(r, x) <= best_area(r).area + 1e-14


@settings(max_examples=40, deadline=None)
@given(r_values, r_values)
def test_best_area_monotone_in_r(r1, r2):
    lo, hi = sorted((r1, r2))
    assert best_area(lo).area <= best_area(hi).area + 1e-14


def test_explicit_x_evaluates_configuration():
    sol = best_area(0.9, 0.25)
    assert sol.x == 0.25
    assert sol.area == pytest.approx(area_A(0.9, 0.25), abs=1e-15)


@pytest.mark.parametrize("r", [0.7, 1.01, float("nan")])
def test_r_out_of_domain(r):
    with pytest.raises(DomainError):
        best_area(r)


@pytest.mark.parametrize("x", [-0.1, 0.9])
def test_x_out_of_domain(x):
    with pytest.raises(DomainError):
        area_A(0.9, x)


# -- capped polygon search --------------------------------------------------------


@pytest.mark.parametrize("k, expected", [
    (3, math.sqrt(3) / 4),          # [DERIVED] equilateral triangle
    (4, 0.5),                        # [DERIVED] unit-diagonal square
    (5, 0.6571638901489),            # [DERIVED] regular pentagon
    (6, 0.674981),                   # published value: V(2,6) = 0.6749...
])
def test_uniform_caps(k, expected):
    pts, area = maximize_capped_polygon(CapMatrix.uniform(k))
    assert area == pytest.approx(expected, abs=1e-6)
    assert geomkit.diameter(pts) <= 1.0 + 1e-9
    assert geomkit.hull_area_2d(pts) == pytest.approx(area, abs=1e-12)


@pytest.mark.parametrize("r", np.linspace(R_MIN, R_MAX, 3))
def test_pentagon_caps_reach_best_area(r):
    pts, area = maximize_capped_polygon(pentagon_caps(r))
    assert area == pytest.approx(best_area(r).area, abs=1e-7)
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    # the search may relabel vertices, so check against the best matching apex
    assert any(np.all(d <= pentagon_caps(r)[np.ix_(perm, perm)] + 1e-9)
               for perm in ([4, 0, 1, 2, 3], [0, 4, 1, 2, 3], [0, 1, 4, 2, 3], [0, 1, 2, 4, 3], [0, 1, 2, 3, 4])
               ) or np.all(d <= pentagon_caps(r) + 1e-9)


def test_cap_matrix_parse_round_trip():
    cm = CapMatrix(pentagon_caps(0.8))
    again = CapMatrix.parse(cm.dumps())
    assert np.array_equal(again.caps, cm.caps)


@pytest.mark.parametrize("text", [
    "3\n0 1 1\n1 0 1\n1 1.1 0\n",          # asymmetric
    "3\n0 1 1\n1 0 1\n",                   # missing row
    "3\n0 1\n1 0 1\n1 1 0\n",              # short row
    "2\n0 1\n1 0\n",                       # k < 3
    "3\n0 1 1\n1 0 -1\n1 -1 0\n",          # non-positive cap
    "x\n",
])
def test_cap_matrix_rejects(text):
    with pytest.raises(DomainError):
        CapMatrix.parse(text)


def test_cap_matrix_accepts_tiny_asymmetry():
    cm = CapMatrix.parse("3\n0 1 1\n1 0 1\n1 1.0000000000001 0\n")
    assert np.array_equal(cm.caps, cm.caps.T)
