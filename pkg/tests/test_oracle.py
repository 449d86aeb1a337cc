import math

import numpy as np
import pytest

from maxpoly import geomkit
from maxpoly.errors import DomainError
from maxpoly.oracle import (
    SearchConfig,
    independent_violation,
    project_to_bisector,
    search_max_area_polygon,
    search_max_volume_3d,
    verify_projection_monotonicity,
)
from maxpoly.oracle.config import merge_best, penalty_schedule, start_rng
from maxpoly.oracle.search import _Area2D, _Volume3D, compass_search

SMALL = SearchConfig(seed=7, starts=6, inner_iterations=100)


def test_config_validation():
    for bad in ({"seed": -1}, {"seed": 2**64}, {"starts": 0}, {"shrink_factor": 1.0},
                {"initial_step": 0.0}, {"workers": 0}):
        with pytest.raises(DomainError):
            SearchConfig(**bad)


def test_start_rng_depends_only_on_seed_and_start():
    a = start_rng(3, 5).random(4)
    assert np.array_equal(a, start_rng(3, 5).random(4))
    assert not np.array_equal(a, start_rng(3, 6).random(4))
    assert not np.array_equal(a, start_rng(4, 5).random(4))


def test_merge_best_tie_breaks_by_index():
    assert merge_best([1.0, 3.0, 3.0, -math.inf]) == 1
    assert merge_best([-math.inf, -math.inf]) == 0


def test_penalty_schedule_increasing():
    mus = penalty_schedule(7)
    assert len(mus) == 7 and all(b > a for a, b in zip(mus, mus[1:]))


# -- batched kernels against geomkit ------------------------------------------------


def test_area_kernel_matches_geomkit(rng):
    X = rng.normal(size=(200, 6, 2))
    got = _Area2D(6)(X)
    assert np.allclose(got, [geomkit.hull_area_2d(x) for x in X], atol=1e-12)


def test_volume_kernel_matches_geomkit(rng):
    X = rng.normal(size=(200, 6, 3))
    got = _Volume3D(6)(X)
    assert np.allclose(got, [geomkit.hull_volume_3d(x)[0] for x in X], atol=1e-12)


def test_kernels_fall_back_on_ties():
    sq = np.array([[[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0], [0.5, 0.5]]], float)
    assert _Area2D(6)(sq)[0] == pytest.approx(1.0)
    cube = np.array([[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 1, 1]]], float)
    assert _Volume3D(6)(cube)[0] == pytest.approx(geomkit.hull_volume_3d(cube[0])[0])


def test_compass_search_finds_quadratic_max():
    target = np.array([0.3, -0.7, 1.1])
    f = lambda X: -np.sum((X - target) ** 2, axis=1)
    X0 = np.zeros((4, 3)) + np.arange(4)[:, None]
    X, F, evals = compass_search(X0, f, np.full(4, 0.5), 0.5, 500, min_step=1e-10)
    assert np.allclose(X, target, atol=1e-8)
    assert evals > 0


# -- searches ---------------------------------------------------------------------------


def test_polygon_search_deterministic_and_feasible():
    a = search_max_area_polygon(np.ones((5, 5)) - np.eye(5), SMALL)
    b = search_max_area_polygon(np.ones((5, 5)) - np.eye(5), SMALL)
    assert a.best_value == b.best_value and np.array_equal(a.best_points, b.best_points)
    assert a.feasible and independent_violation(a.best_points, np.ones((5, 5))) <= 1e-9
    assert a.best_value == pytest.approx(geomkit.hull_area_2d(a.best_points), abs=1e-15)
    # never beats the regular pentagon
    assert a.best_value <= 0.6571638901489 + 1e-9


def test_results_do_not_depend_on_batch_or_workers():
    base = search_max_volume_3d(6, SMALL)
    more = search_max_volume_3d(6, SMALL.with_(starts=9))
    split = search_max_volume_3d(6, SMALL.with_(workers=2))
    assert more.per_start_values[:6] == base.per_start_values
    assert split.per_start_values == base.per_start_values
    assert np.array_equal(split.best_points, base.best_points)


def test_volume_search_respects_diameter():
    res = search_max_volume_3d(5, SMALL)
    assert res.feasible and geomkit.diameter(res.best_points) <= 1 + 1e-9
    # [DERIVED] V(3,5) = sqrt(3)/12 bounds every feasible five-point hull
    assert res.best_value <= math.sqrt(3) / 12 + 1e-9
    assert res.best_value > 0.12


def test_search_domain_errors():
    with pytest.raises(DomainError):
        search_max_volume_3d(3)
    with pytest.raises(DomainError):
        search_max_area_polygon(np.ones((2, 2)))


# -- projection check ------------------------------------------------------------------------


def test_projection_onto_bisector():
    p, q = np.array([0, 0, 1.0]), np.array([0, 0, -1.0])
    pts = np.array([[0.3, 0.1, 0.4], [-0.2, 0.5, -0.3]])
    out = project_to_bisector(pts, p, q)
    assert np.allclose(out[:, 2], 0.0) and np.allclose(out[:, :2], pts[:, :2])


def test_projection_report_small():
    rep = verify_projection_monotonicity(50, SearchConfig(seed=11))
    assert rep.passed and rep.trials == 50
    assert rep.max_volume_change <= 1e-9 and rep.max_distance_increase <= 1e-12


def test_projection_identity_case():
    rep = verify_projection_monotonicity(20, SearchConfig(seed=1), flat=True)
    assert rep.passed and rep.max_volume_change <= 1e-12
    assert abs(rep.max_distance_increase) <= 1e-12


def test_projection_needs_trials():
    with pytest.raises(ValueError):
        verify_projection_monotonicity(0)
