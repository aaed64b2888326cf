import math

import numpy as np
import pytest

from kcoreset import Dataset, ValidationError, mean_sensitivity, sensitivity_bound
from kcoreset.oracle import exact_sensitivity
from kcoreset.sensitivity import SensitivityProfile, alpha, bound_from_solution, expected_mean, mean_bound

from conftest import random_metric


def test_alpha_value():
    assert alpha(4, 2) == 128.0


def test_identical_points_degenerate():
    X = Dataset.from_points(np.ones((10, 2)))
    for k in (1, 3):
        prof = sensitivity_bound(X, k, 2, 0.1, 0)
        assert np.allclose(prof.s, 4.0 ** (2 - 1), rtol=0, atol=0)


def test_bound_formula_by_hand(rng):
    pts = rng.normal(size=(30, 2))
    X = Dataset.from_points(pts)
    centers = np.array([2, 17, 25])
    p, k = 1.5, 3
    s, part, a = bound_from_solution(X, centers, k, p)
    d = np.array([[math.dist(x, pts[c]) for c in centers] for x in pts])
    owner = d.argmin(axis=1)
    dp = d[np.arange(30), owner] ** p
    phi = dp.mean()
    for x in range(30):
        i = owner[x]
        members = np.flatnonzero(owner == i)
        phi_i = dp[members].mean()
        expected = (a * 2**p * dp[x] / (2 * phi) + a * 4**p * phi_i / (4 * phi)
                    + 4**p * 30 / (4 * len(members)))
        assert s[x] == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("p", [1, 2, 3, 1.7])
@pytest.mark.parametrize("k", [1, 2, 5])
def test_mean_identity(rng, p, k):
    X = Dataset.from_points(rng.normal(size=(120, 2)))
    prof = sensitivity_bound(X, k, p, 0.1, 7)
    k_eff = int(np.count_nonzero(prof.partition.cluster_sizes))
    assert prof.mean_S == pytest.approx(expected_mean(k_eff, k, p), rel=1e-9)
    assert prof.mean_S <= mean_bound(k, p)
    assert mean_sensitivity(prof) == prof.mean_S
    assert np.all(prof.s > 0)


def test_mean_sensitivity_uniform():
    prof = SensitivityProfile(s=np.full(5, 2.5), mean_S=2.5, p=1.0, alpha=None)
    assert mean_sensitivity(prof) == 2.5


def test_dominance_small_metric():
    rng = np.random.default_rng(1)
    for _ in range(30):
        X = random_metric(rng, 8)
        for p in (1, 2):
            prof = sensitivity_bound(X, 2, p, 0.1, int(rng.integers(1 << 30)))
            assert np.all(prof.s >= exact_sensitivity(X, 2, p))


def test_scale_equivariance(rng):
    pts = rng.normal(size=(80, 3))
    a = sensitivity_bound(Dataset.from_points(pts), 3, 2, 0.1, 5)
    b = sensitivity_bound(Dataset.from_points(pts * 2.0), 3, 2, 0.1, 5)
    assert np.array_equal(a.solution.centers, b.solution.centers)
    assert np.allclose(a.s, b.s, rtol=1e-12)


def test_validation(line3):
    with pytest.raises(ValidationError):
        sensitivity_bound(line3, 0, 2, 0.1, 0)
    with pytest.raises(ValidationError):
        sensitivity_bound(line3, 1, 2, 1.5, 0)
