"""Upper bounds on the sensitivity of each point for k-clustering with power p.

Given a bicriteria solution ``B`` with cost ``phi_B`` and its partition into
clusters ``B_i``, each point ``x`` in ``B_i`` gets

    s(x) = alpha 2^p d(x, b_i)^p / (2 phi_B)
         + alpha 4^p phi_{B_i}(b_i) / (4 phi_B)
         + 4^p n / (4 |B_i|)

with ``alpha = 2^(p+3) (log2 k + 2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .metric import Dataset, Partition, ValidationError, assign, powp, query_from_indices
from .seeding import SeedLike, SeedSolution, best_of_runs


def alpha(k: int, p: float) -> float:
    return 2.0 ** (p + 3) * (math.log2(k) + 2)


def mean_bound(k: int, p: float) -> float:
    """The proven ceiling ``8^(p+2) k`` on the mean sensitivity bound."""
    return 8.0 ** (p + 2) * k


def expected_mean(k_eff: int, k: int, p: float) -> float:
    """Closed form of the mean bound when the solution has positive cost.

    ``k_eff`` is the number of non-empty clusters.
    """
    a = alpha(k, p)
    return a * 2.0 ** (p - 1) + a * 2.0 ** (2 * p - 2) + 4.0 ** (p - 1) * k_eff


@dataclass(frozen=True, eq=False)
class SensitivityProfile:
    s: np.ndarray
    mean_S: float
    p: Any
    alpha: Optional[float]
    solution: Optional[SeedSolution] = None
    partition: Optional[Partition] = None
    # per-grid-point profiles of a combined one-shot bound
    components: tuple = field(default=())

    @property
    def n(self) -> int:
        return len(self.s)


def mean_sensitivity(profile: SensitivityProfile) -> float:
    return profile.mean_S


def bound_from_solution(dataset: Dataset, centers, k: int, p: float):
    """Per-point bound for a fixed solution. Returns ``(s, partition, alpha)``."""
    B = query_from_indices(dataset, _dedupe(centers))
    part = assign(dataset, B)
    dist = dataset.center_distances(B)[np.arange(dataset.n), part.owner]
    dp = powp(dist, p)
    n = dataset.n
    phi_B = float(dp.sum() / n)
    sizes = part.cluster_sizes
    a = alpha(k, p)

    s = (4.0 ** p / 4.0) * n / sizes[part.owner]
    if phi_B > 0:
        # phi_{B_i}(b_i): mean of d^p inside cluster i
        cluster_sum = np.bincount(part.owner, weights=dp, minlength=len(sizes))
        with np.errstate(invalid="ignore", divide="ignore"):
            cluster_cost = np.where(sizes > 0, cluster_sum / np.maximum(sizes, 1), 0.0)
        s = (a * 2.0 ** p * dp / (2.0 * phi_B)
             + a * 4.0 ** p * cluster_cost[part.owner] / (4.0 * phi_B)
             + s)
    return s, part, a


def _dedupe(centers):
    centers = np.asarray(centers, dtype=np.intp)
    _, first = np.unique(centers, return_index=True)
    return centers[np.sort(first)]


def sensitivity_bound(dataset: Dataset, k: int, p: float, delta: float, seed: SeedLike) -> SensitivityProfile:
    """Sensitivity upper bound anchored at the best of ``ceil(ln 1/delta)`` seedings."""
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    if p < 1:
        raise ValidationError(f"p must be >= 1, got {p}")
    sol = best_of_runs(dataset, k, p, delta, seed)
    s, part, a = bound_from_solution(dataset, sol.centers, k, p)
    s.setflags(write=False)
    return SensitivityProfile(s=s, mean_S=float(np.mean(s)), p=float(p), alpha=a,
                              solution=sol, partition=part)
