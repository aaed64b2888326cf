import itertools
import math

import numpy as np
import pytest

from kcoreset import (Dataset, ValidationError, build_fixed_p, cost, compare_uniform_baseline, dp_sample,
                      exact_sensitivity, hoelder_check, tightness_instance, measure_error, sample_queries)
from kcoreset.coreset import WeightedCoreset, uniform_coreset
from kcoreset.oracle import tightness_sides

from conftest import random_metric


def loop_sensitivity(D, k, p):
    """Independent enumerator: explicit loops over every center set of size <= k."""
    n = len(D)
    best = [0.0] * n
    for size in range(1, k + 1):
        for Q in itertools.combinations(range(n), size):
            costs = [min(D[x][q] for q in Q) ** p for x in range(n)]
            phi = sum(costs) / n
            for x in range(n):
                if costs[x] > 0:
                    best[x] = max(best[x], costs[x] / phi)
    return best


def test_exact_sensitivity_three_points(line3):
    assert exact_sensitivity(line3, 1, 1) == pytest.approx([1.8, 1.2, 2.25], rel=1e-15)


def test_exact_sensitivity_identical_points():
    X = Dataset.from_points(np.full((6, 2), 3.0))
    assert np.all(exact_sensitivity(X, 2, 2) == 1)
    assert np.all(exact_sensitivity(X, 1, 1.5) == 1)


def test_exact_sensitivity_matches_loops(rng):
    X = random_metric(rng, 8)
    D = X.pairwise().tolist()
    for p in (1, 2, 1.5):
        assert exact_sensitivity(X, 2, p) == pytest.approx(loop_sensitivity(D, 2, p), rel=1e-12)


def test_exact_sensitivity_lower_bounds(rng):
    for _ in range(5):
        X = random_metric(rng, 9)
        sigma = exact_sensitivity(X, 2, 2)
        assert sigma.max() >= 1 and sigma.mean() >= 1


def test_exact_sensitivity_too_large():
    X = Dataset.from_points(np.arange(200.0))
    with pytest.raises(ValidationError):
        exact_sensitivity(X, 4, 1)


def test_uniform_queries_full_set():
    X = Dataset.from_matrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    fam = sample_queries(X, 3, 1, 1, "uniform_subsets", 0)
    assert sorted(fam.queries[0].tolist()) == [0, 1, 2]


@pytest.mark.parametrize("strategy", ["uniform_subsets", "dp_sampled", "perturbed_solution"])
def test_query_contract(rng, strategy):
    X = Dataset.from_points(rng.normal(size=(60, 3)))
    fam = sample_queries(X, 4, 2, 25, strategy, 3)
    assert len(fam) == 25 and fam.strategy == strategy
    for Q in fam.queries:
        assert Q.centers.shape == (4, 3)


def test_metric_query_indices(rng):
    X = random_metric(rng, 12)
    for Q in sample_queries(X, 3, 1, 20, "uniform_subsets", 1).queries:
        assert len(set(Q.tolist())) == 3 and all(0 <= i < 12 for i in Q.tolist())


def test_dp_family_reproduces_dp_sample(rng):
    X = random_metric(rng, 20)
    fam = sample_queries(X, 3, 2, 10, "dp_sampled", 99)
    for i, Q in enumerate(fam.queries):
        assert Q.tolist() == dp_sample(X, 3, 2, (99, i)).tolist()


def test_perturbed_needs_euclidean(rng):
    with pytest.raises(ValidationError):
        sample_queries(random_metric(rng, 5), 2, 1, 3, "perturbed_solution", 0)


def test_identity_coreset_has_zero_error(rng):
    pts = rng.normal(size=(40, 2))
    n = len(pts)
    C = WeightedCoreset(indices=np.arange(n), weights=np.full(n, 1 / n), q=np.full(n, 1 / n),
                        n=n, points=pts)
    X = Dataset.from_points(pts)
    rep = measure_error(X, C, sample_queries(X, 3, 2, 20, "uniform_subsets", 0), 2)
    assert rep.max_error == pytest.approx(0, abs=1e-14)


def test_single_draw_error():
    X = Dataset.from_points([[0.0], [4.0]])
    C = WeightedCoreset(indices=np.array([1]), weights=np.array([0.75]), q=np.array([2 / 3]), n=2,
                        points=np.array([[4.0]]))
    rep = measure_error(X, C, [[[1.0]]], 2)
    phi = (1 + 9) / 2
    assert rep.max_error == pytest.approx(abs(0.75 * 9 - phi) / phi, rel=1e-15)


def test_zero_cost_queries_flagged():
    X = Dataset.from_points([[1.0], [1.0]])
    C = uniform_coreset(X, 3, 0)
    rep = measure_error(X, C, [[[1.0]], [[2.0]]], 1)
    assert rep.zero_cost == (0,) and [i for i, _ in rep.per_query] == [1]


def test_error_scale_invariant(rng):
    pts = rng.normal(size=(300, 2))
    errs = []
    for lam in (1.0, 4.0):
        X = Dataset.from_points(pts * lam)
        C = build_fixed_p(X, 3, 2, 0.1, 50, 1)
        fam = sample_queries(X, 3, 2, 10, "dp_sampled", 2)
        errs.append([e for _, e in measure_error(X, C, fam, 2).per_query])
    assert np.allclose(errs[0], errs[1], rtol=1e-9)


def test_tightness_instance_values():
    X, Q, w = tightness_instance(10**4, 1, 0.5)
    vals, counts = np.unique(X.points[:, 0], return_counts=True)
    assert X.n == 10**4
    assert vals == pytest.approx([10**-1.6, 1.0, 10**1.6], rel=1e-12)
    assert counts.tolist() == [9899, 100, 1]
    assert X.points[w, 0] == 1.0 and Q.tolist() == [[0.0]]


@pytest.mark.parametrize("n", [10**4, 10**6])
@pytest.mark.parametrize("p", [1, 2])
@pytest.mark.parametrize("spacing", [0.5, 1.0])
def test_tightness_inequality(n, p, spacing):
    X, Q, w = tightness_instance(n, p, spacing)
    assert X.n == n
    lhs, rhs = tightness_sides(X, Q, w, p, spacing)
    assert lhs >= rhs


def test_tightness_too_small():
    with pytest.raises(ValidationError):
        tightness_instance(3, 1, 0.5)


def test_hoelder_equality_cases():
    X = Dataset.from_points([[-2.0], [2.0]])
    assert hoelder_check(X, [[0.0]], 2, 1.5) == 0.0
    assert hoelder_check(X, [[0.5]], 1.7, 1.0) == 0.0


def test_hoelder_random(rng):
    for _ in range(300):
        X = Dataset.from_points(rng.normal(size=(int(rng.integers(1, 30)), 2)))
        Q = rng.normal(size=(2, 2))
        p, e = rng.uniform(1, 4), rng.uniform(1, 3)
        scale = max(1.0, cost(X, Q, p) ** e)
        assert hoelder_check(X, Q, p, e) >= -1e-9 * scale


def test_uniform_baseline_paired(rng):
    pts = rng.normal(size=(300, 2))
    X = Dataset.from_points(pts)
    res = compare_uniform_baseline(X, 2, 2, 30, 3, 5, queries=5, strategy="dp_sampled")
    for t in range(3):
        fam = sample_queries(X, 2, 2, 5, "dp_sampled", (5, t, 2))
        c_s = build_fixed_p(X, 2, 2, 0.1, 30, (5, t, 0))
        c_u = uniform_coreset(X, 30, (5, t, 1))
        assert res.sensitivity_max[t] == measure_error(X, c_s, fam, 2).max_error
        assert res.uniform_max[t] == measure_error(X, c_u, fam, 2).max_error
