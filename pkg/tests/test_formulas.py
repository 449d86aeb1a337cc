import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from maxpoly import formulas
from maxpoly.construct import regular_simplex
from maxpoly.errors import DomainError
from maxpoly.pentagon import best_area

mp.mp.dps = 40


def mp_simplex(n):
    return mp.sqrt(mp.mpf(n + 1) / 2**n) / mp.factorial(n)


@pytest.mark.parametrize("n", range(1, 31))
def test_v_simplex_against_mpmath(n):
    assert formulas.v_simplex(n).volume == pytest.approx(float(mp_simplex(n)), rel=1e-13)


@pytest.mark.parametrize("n", range(2, 7))
def test_v_simplex_against_hull_of_coordinates(n):
    pts = regular_simplex(n)
    assert ConvexHull(pts).volume == pytest.approx(formulas.v_simplex(n).volume, rel=1e-10)


@pytest.mark.parametrize("n", range(2, 21))
def test_double_pyramid_identity(n):
    v = formulas.v_n_plus_2(n).volume
    assert v == pytest.approx(formulas.v_simplex(n - 1).volume / n, rel=1e-14)
    assert v == pytest.approx(formulas.v_n_plus_2_recursive(n).volume, rel=1e-14)
    assert v == pytest.approx(float(mp.sqrt(mp.mpf(n) / 2 ** (n - 1)) / mp.factorial(n)), rel=1e-13)


@pytest.mark.parametrize("n", [3, 4])
def test_double_pyramid_hull(n):
    # bipyramid over a unit-edge (n-1)-simplex with apexes at distance 1
    base = regular_simplex(n - 1)
    pts = np.zeros((n + 2, n))
    pts[:n, : n - 1] = base
    pts[n, -1], pts[n + 1, -1] = 0.5, -0.5
    assert ConvexHull(pts).volume == pytest.approx(formulas.v_n_plus_2(n).volume, rel=1e-10)


@pytest.mark.parametrize("k", [3, 5, 7, 9, 11])
def test_odd_polygon(k):
    # [DERIVED] regular k-gon with diameter 1: circumradius 1 / (2 sin(pi (k-1) / (2k)))
    R = 1 / (2 * math.sin(math.pi * (k - 1) / (2 * k)))
    assert formulas.v2k_odd(k).volume == pytest.approx(0.5 * k * R * R * math.sin(2 * math.pi / k), rel=1e-12)


def test_v36_paper_value():
    # published value: V(3,6) = 0.1954...
    v = formulas.volume(3, 6).volume
    assert v == pytest.approx(0.1954, abs=5e-4)
    assert math.floor(v * 1e4) == 1954


def test_v35_hand_value():
    # [DERIVED] sqrt(3/4)/6
    assert formulas.volume(3, 5).volume == pytest.approx(math.sqrt(3) / 12, rel=1e-15)
    assert formulas.volume(3, 5).volume == pytest.approx(0.144338, abs=1e-6)


def test_v_n_plus_3_definition():
    for n in range(3, 13):
        v = formulas.v_n_plus_3(n).volume
        expected = best_area(formulas.r_of_n(n)).area / n * formulas.v_simplex(n - 2).volume
        assert v == pytest.approx(expected, rel=1e-14)


def test_r_of_n_matches_circumradius():
    for n in range(3, 40):
        R = formulas.circumradius(n)
        assert formulas.r_of_n(n) == pytest.approx(math.sqrt(1 - R * R), rel=1e-14)
        # [DERIVED] circumradius of the unit-edge (n-2)-simplex
        assert R == pytest.approx(math.sqrt((n - 2) / (2 * (n - 1))), rel=1e-14)
    assert formulas.r_of_n(3) == pytest.approx(math.sqrt(3) / 2)
    assert formulas.r_of_n(math.inf) == 1 / math.sqrt(2)


def test_octahedral_bound_below_pyramidal():
    for n in range(3, 13):
        assert formulas.octahedral_bound(n) < formulas.v_n_plus_3(n).volume


@pytest.mark.parametrize("n, k", [(1, 2), (3, 3), (3, 9), (2, 6), (2.5, 4)])
def test_volume_domain(n, k):
    with pytest.raises(DomainError):
        formulas.volume(n, k)


def test_dispatch_routes():
    assert formulas.volume(4, 5).provenance == "regular simplex"
    assert formulas.volume(4, 6).provenance == "double pyramid"
    assert formulas.volume(4, 7).provenance == "pyramidal pentagon"
    assert formulas.volume(2, 7).provenance == "regular odd polygon"
    assert formulas.volume(2, 5).volume == pytest.approx(best_area(1.0).area, abs=1e-12)


def test_large_n_does_not_underflow():
    v = formulas.v_simplex(10**6)
    assert v.volume == 0.0 and math.isfinite(v.log_volume)


# -- h sweep and limits -------------------------------------------------------------


def test_h_sweep():
    sweep = formulas.v36_h_sweep()
    assert sweep.argmax == pytest.approx(1.0, abs=1e-6)
    assert sweep.maximum == pytest.approx(formulas.volume(3, 6).volume, abs=1e-12)
    hs, vs = zip(*sweep.profile)
    assert len(hs) == 101 and vs[0] == 0.0
    assert all(b >= a for a, b in zip(vs, vs[1:]))


@given(st.floats(0.0, 1.0))
def test_pyramid_volume_below_max(h):
    assert formulas.pyramid_volume_at_height(h) <= formulas.volume(3, 6).volume + 1e-15


def test_limit_ratios():
    for n in range(3, 30):
        r1, r2 = formulas.limit_ratios(n)
        assert r1 == pytest.approx(1.0, abs=1e-14)
        assert r2 == pytest.approx(best_area(formulas.r_of_n(n)).area, abs=1e-12)
    # published value: limit 0.5002...
    assert formulas.limit_ratios(10**6)[1] == pytest.approx(0.5002, abs=1e-3)


# -- counting --------------------------------------------------------------------------


@pytest.mark.parametrize("n, phi", [(1, 1), (2, 1), (9, 6), (10, 4), (12, 4), (97, 96), (100, 40)])
def test_totient(n, phi):
    assert formulas.totient(n) == phi
    assert phi == sum(1 for j in range(1, n + 1) if math.gcd(j, n) == 1)


def test_trackleation_hand_values():
    # [DERIVED] hand evaluation of the formula
    assert [formulas.trackleation_count(m).value for m in (2, 3, 4)] == [3, 10, 31]
    assert formulas.trackleation_count(1).value == Fraction(3, 4)


def test_trackleation_integrality():
    bad = formulas.non_integer_trackleation_counts(range(1, 65))
    assert [c.parameter for c in bad] == [1]


def test_bender_wormald_exact():
    res = formulas.bender_wormald(6)
    assert res.value == Fraction(3003, 408240)
    assert res.value == Fraction(math.comb(14, 8), 972 * 5 * 7 * 12)
    assert not res.is_integer
