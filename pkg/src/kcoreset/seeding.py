"""D^p-sampling and the best-of-repeats bicriteria solution."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .metric import Dataset, ValidationError, cost, powp, query_from_indices

SeedLike = Union[int, Sequence[int], np.random.Generator]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Generator from an int, a tuple of ints (a derived sub-seed) or a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, (int, np.integer)):
        return np.random.default_rng(int(seed))
    return np.random.default_rng([int(s) for s in seed])


def seed_entropy(seed: SeedLike) -> tuple:
    """Normalise a seed to a tuple of ints so that sub-seeds can be appended."""
    if isinstance(seed, np.random.Generator):
        return (int(seed.integers(2**63)),)
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(s) for s in seed)


def sub_seed(seed: SeedLike, *path: int) -> tuple:
    return seed_entropy(seed) + tuple(int(v) for v in path)


@dataclass(frozen=True)
class SeedSolution:
    centers: np.ndarray
    cost_at_p: float
    runs_used: int
    seed: tuple
    run_costs: tuple = ()


def _draw(rng: np.random.Generator, mass: np.ndarray) -> int:
    # inverse CDF; side="right" never lands on a zero-mass entry
    cdf = np.cumsum(mass)
    u = rng.random() * cdf[-1]
    return min(int(np.searchsorted(cdf, u, side="right")), len(mass) - 1)


def dp_sample(dataset: Dataset, k: int, p: float, rng: SeedLike) -> np.ndarray:
    """Sample ``k`` center indices by D^p-sampling.

    The first center is uniform. Each further center is drawn with
    probability proportional to ``d(x, B) ** p`` for the centers ``B`` chosen
    so far. If that mass vanishes (every point sits on a center) the rest
    are drawn uniformly; the cost is already zero then.
    """
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    rng = make_rng(rng)
    n = dataset.n
    centers = [int(rng.integers(n))]
    dist = dataset.center_distances(query_from_indices(dataset, centers))[:, 0]
    mass = powp(dist, p)
    for _ in range(1, k):
        total = mass.sum()
        if total > 0:
            nxt = _draw(rng, mass)
        else:
            nxt = int(rng.integers(n))
        centers.append(nxt)
        if nxt in centers[:-1]:
            continue
        new = dataset.center_distances(query_from_indices(dataset, [nxt]))[:, 0]
        np.minimum(dist, new, out=dist)
        mass = powp(dist, p)
    return np.asarray(centers, dtype=np.intp)


def num_runs(delta: float) -> int:
    """Number of seeding repeats, ``max(1, ceil(ln(1/delta)))``."""
    if not 0 < delta < 1:
        raise ValidationError(f"delta must lie in (0, 1), got {delta}")
    return max(1, math.ceil(math.log(1.0 / delta)))


def best_of_runs(dataset: Dataset, k: int, p: float, delta: float, seed: SeedLike) -> SeedSolution:
    """Run :func:`dp_sample` ``num_runs(delta)`` times and keep the cheapest.

    Run ``r`` draws from the sub-seed ``(seed, r)``; ties go to the lowest run.
    """
    runs = num_runs(delta)
    base = seed_entropy(seed)
    best = None
    costs = []
    for r in range(runs):
        centers = dp_sample(dataset, k, p, make_rng(base + (r,)))
        c = cost(dataset, _unique_query(dataset, centers), p)
        costs.append(c)
        if best is None or c < best[1]:
            best = (centers, c)
    return SeedSolution(centers=best[0], cost_at_p=best[1], runs_used=runs, seed=base,
                        run_costs=tuple(costs))


def _unique_query(dataset: Dataset, centers):
    # duplicates only arise from the zero-mass fallback; they do not change cost
    _, first = np.unique(centers, return_index=True)
    return query_from_indices(dataset, np.asarray(centers)[np.sort(first)])
