"""One-shot coresets valid for every power in ``[1, p_max]`` at once.

Sensitivity bounds are computed on an exponential grid of powers
``1, (1+Δ), (1+Δ)^2, ...`` (last point clamped to ``p_max``), inflated by
``n^Δ`` and summed. A single importance-sampling pass over the summed
scores gives the coreset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .coreset import SAMPLING_STREAM, SENSITIVITY_STREAM, WeightedCoreset, importance_sample
from .metric import Dataset, QueryLike, ValidationError, cost, point_to_query_distance, powp
from .seeding import SeedLike, seed_entropy, sub_seed
from .sensitivity import SensitivityProfile, sensitivity_bound

AUTO = "auto"


@dataclass(frozen=True)
class GridSpec:
    p_max: float
    delta_spacing: float
    ell: int
    grid: tuple

    def interval_of(self, p: float) -> int:
        """Index ``i`` with ``grid[i] <= p <= grid[i+1]`` (last index for p_max)."""
        if not 1 <= p <= self.p_max:
            raise ValidationError(f"p={p} outside [1, {self.p_max}]")
        i = int(np.searchsorted(self.grid, p, side="right")) - 1
        return min(max(i, 0), len(self.grid) - 1)


def auto_spacing(n: int) -> float:
    if n < 3:
        raise ValidationError("automatic spacing 1/ln n needs n >= 3; pass the spacing explicitly")
    return 1.0 / math.log(n)


def build_grid(p_max: float, spacing: Union[float, str] = AUTO, n: Optional[int] = None) -> GridSpec:
    """Exponential grid over ``[1, p_max]`` with ratio ``1 + spacing``."""
    p_max = float(p_max)
    if not math.isfinite(p_max) or p_max < 1:
        raise ValidationError(f"p_max must be a finite value >= 1, got {p_max}")
    if spacing == AUTO:
        if n is None:
            raise ValidationError("automatic spacing needs n")
        spacing = auto_spacing(n)
    spacing = float(spacing)
    if not spacing > 0:
        raise ValidationError(f"grid spacing must be positive, got {spacing}")
    if p_max == 1:
        return GridSpec(p_max, spacing, 0, (1.0,))
    ell = math.ceil(math.log(p_max) / math.log1p(spacing))
    raw = [(1 + spacing) ** i for i in range(ell)]
    # rounding can leave the penultimate point on top of p_max
    while len(raw) > 1 and abs(raw[-1] - p_max) <= 1e-12 * p_max:
        raw.pop()
    grid = tuple(raw) + (p_max,)
    return GridSpec(p_max, spacing, len(grid) - 1, grid)


def inflation(n: int, spacing: float) -> float:
    """``n ** spacing`` evaluated as ``exp(spacing ln n)``."""
    return math.exp(spacing * math.log(n))


def oneshot_sensitivity(dataset: Dataset, k: int, p_max: float, spacing: Union[float, str],
                        delta: float, seed: SeedLike) -> SensitivityProfile:
    """Summed, ``n^Δ``-inflated sensitivity bounds over the grid.

    Each grid point gets failure budget ``delta/(2 ell)`` (``delta/2`` for a
    single-point grid) and its own sub-seed ``(seed, 0, grid index)``.
    """
    grid = build_grid(p_max, spacing, dataset.n)
    budget = delta / (2 * grid.ell) if grid.ell > 0 else delta / 2
    base = seed_entropy(seed)
    factor = inflation(dataset.n, grid.delta_spacing)
    total = np.zeros(dataset.n)
    parts = []
    for i, p in enumerate(grid.grid):
        prof = sensitivity_bound(dataset, k, p, budget, sub_seed(base, SENSITIVITY_STREAM, i))
        total += factor * prof.s
        parts.append(prof)
    total.setflags(write=False)
    return SensitivityProfile(s=total, mean_S=float(np.mean(total)), p=grid, alpha=None,
                              components=tuple(parts))


def build_oneshot(dataset: Dataset, k: int, p_max: float, delta: float, m: int, seed: SeedLike,
                  spacing: Union[float, str] = AUTO) -> WeightedCoreset:
    """One coreset for all ``p`` in ``[1, p_max]``."""
    base = seed_entropy(seed)
    profile = oneshot_sensitivity(dataset, k, p_max, spacing, delta, base)
    grid = profile.p
    prov = {
        "kind": "one-shot",
        "dataset_mode": dataset.mode,
        "p_max": grid.p_max,
        "spacing": grid.delta_spacing,
        "grid": list(grid.grid),
        "grid_mean_S": [c.mean_S for c in profile.components],
        "k": int(k),
        "delta": float(delta),
        "seed": list(base),
        "m": int(m),
        "n": int(dataset.n),
        "mean_S": profile.mean_S,
    }
    return importance_sample(dataset, profile, m, sub_seed(base, SAMPLING_STREAM), prov)


def interpolation_bound_check(dataset: Dataset, Q: QueryLike, p: float, spacing: float,
                              theta: float, x: int) -> float:
    """RHS minus LHS of the interpolation inequality between ``p`` and ``p(1+Δ)``.

        d^{p(1+θΔ)} / φ^{p(1+θΔ)}
            <= n^{θΔ} ((1-θ) d^p / φ^p + θ d^{p(1+Δ)} / φ^{p(1+Δ)})

    where ``d = d(x, Q)`` and ``φ^r = cost(X, Q, r)``. Non-negative when the
    inequality holds.
    """
    if not 0 <= theta <= 1:
        raise ValidationError(f"theta must lie in [0, 1], got {theta}")
    p_mid = p * (1 + theta * spacing)
    p_hi = p * (1 + spacing)
    costs = [cost(dataset, Q, r) for r in (p, p_mid, p_hi)]
    if min(costs) <= 0:
        raise ValidationError("the interpolation bound needs positive cost at all three powers")
    d = point_to_query_distance(dataset, x, Q)
    lhs = float(powp(d, p_mid)) / costs[1]
    rhs = inflation(dataset.n, theta * spacing) * (
        (1 - theta) * float(powp(d, p)) / costs[0] + theta * float(powp(d, p_hi)) / costs[2]
    )
    return rhs - lhs
