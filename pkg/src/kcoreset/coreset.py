"""Importance-sampled weighted coresets for a fixed power p."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .metric import Dataset, ValidationError
from .seeding import SeedLike, make_rng, seed_entropy, sub_seed
from .sensitivity import SensitivityProfile, sensitivity_bound

# sub-seed tags under the master seed
SENSITIVITY_STREAM = 0
SAMPLING_STREAM = 1


@dataclass(frozen=True, eq=False)
class WeightedCoreset:
    """m sampled points with importance weights.

    ``indices`` refer to the source dataset; ``points`` holds the matching
    coordinates for Euclidean data (``None`` for metric data). ``q`` is the
    sampling probability of each entry, kept so the weight formula can be
    rechecked. Repeated draws stay as separate entries.
    """

    indices: np.ndarray
    weights: np.ndarray
    q: np.ndarray
    n: int
    points: np.ndarray | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return len(self.indices)

    def check(self, rtol: float = 1e-12) -> None:
        """Re-validate the weight identity ``w * n * m * q == 1``."""
        if self.m < 1:
            raise ValidationError("a coreset needs at least one entry")
        if not (len(self.weights) == len(self.q) == self.m):
            raise ValidationError("indices, weights and q must have equal length")
        if self.points is not None and len(self.points) != self.m:
            raise ValidationError("points and indices must have equal length")
        if np.any(self.weights <= 0) or np.any(self.q <= 0) or np.any(self.q > 1):
            raise ValidationError("weights must be positive and q in (0, 1]")
        if np.any(self.indices < 0) or np.any(self.indices >= self.n):
            raise ValidationError("coreset index out of range")
        ident = self.weights * self.n * self.m * self.q
        bad = np.flatnonzero(np.abs(ident - 1.0) > rtol)
        if len(bad):
            i = int(bad[0])
            raise ValidationError(f"entry {i} breaks the weight identity: w*n*m*q = {ident[i]!r}")

    def compact(self) -> "WeightedCoreset":
        """Merge repeated points by summing their weights.

        Leaves every weighted cost unchanged. The merged coreset no longer
        satisfies the per-entry weight identity, so ``q`` is rescaled to the
        merged multiplicity.
        """
        uniq, inv, counts = np.unique(self.indices, return_inverse=True, return_counts=True)
        w = np.bincount(inv, weights=self.weights)
        first = np.array([np.flatnonzero(inv == j)[0] for j in range(len(uniq))])
        pts = None if self.points is None else self.points[first]
        return WeightedCoreset(indices=uniq, weights=w, q=self.q[first] * counts, n=self.n,
                               points=pts, provenance={**self.provenance, "compacted": True})


def sampling_probabilities(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    total = s.sum()
    if not total > 0 or np.any(s < 0):
        raise ValidationError("sensitivities must be non-negative with a positive sum")
    return s / total


def importance_sample(dataset: Dataset, profile, m: int, seed: SeedLike,
                      provenance: dict | None = None) -> WeightedCoreset:
    """Draw ``m`` i.i.d. points with ``q(x) ∝ s(x)``, each weighted ``1/(n m q(x))``.

    ``profile`` is a :class:`SensitivityProfile` or a bare array of scores.
    """
    if m < 1:
        raise ValidationError(f"m must be positive, got {m}")
    s = profile.s if isinstance(profile, SensitivityProfile) else profile
    q = sampling_probabilities(s)
    if len(q) != dataset.n:
        raise ValidationError("sensitivity vector length does not match the dataset")
    rng = make_rng(seed)
    cdf = np.cumsum(q)
    u = rng.random(m) * cdf[-1]
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), dataset.n - 1).astype(np.intp)
    qi = q[idx]
    weights = 1.0 / (dataset.n * m * qi)
    points = dataset.points[idx] if dataset.is_euclidean else None
    return WeightedCoreset(indices=idx, weights=weights, q=qi, n=dataset.n, points=points,
                           provenance=dict(provenance or {}))


def build_fixed_p(dataset: Dataset, k: int, p: float, delta: float, m: int,
                  seed: SeedLike) -> WeightedCoreset:
    """Coreset for one power ``p``: sensitivity bound at ``delta/2``, then sampling."""
    base = seed_entropy(seed)
    profile = sensitivity_bound(dataset, k, p, delta / 2, sub_seed(base, SENSITIVITY_STREAM, 0))
    prov = {
        "kind": "fixed-p",
        "dataset_mode": dataset.mode,
        "p": float(p),
        "k": int(k),
        "delta": float(delta),
        "seed": list(base),
        "m": int(m),
        "n": int(dataset.n),
        "mean_S": profile.mean_S,
    }
    return importance_sample(dataset, profile, m, sub_seed(base, SAMPLING_STREAM), prov)


def uniform_coreset(dataset: Dataset, m: int, seed: SeedLike) -> WeightedCoreset:
    """Plain uniform subsample with weights ``1/m``."""
    c = importance_sample(dataset, np.ones(dataset.n), m, seed)
    return replace(c, provenance={"kind": "uniform", "m": int(m), "n": int(dataset.n),
                                  "seed": list(seed_entropy(seed))})


def theoretical_sample_size(n: int, k: int, p: float, eps: float, delta: float,
                            space: str = "metric", d: int | None = None, c: float = 1.0) -> int:
    """Coreset size demanded by the worst-case guarantees (natural logs).

    metric:    8^(p+3) k / (3 eps^2) * (1 + k ln n + ln(2/delta))
    euclidean: c 8^p p k ln k / eps^2 * (d k ln k + ln(1/delta)), with c = 1
               by convention since the absolute constant is unspecified.

    Advisory only; at desk scale these numbers dwarf n.
    """
    if not 0 < eps <= 1 or not 0 < delta < 1:
        raise ValidationError("need eps in (0, 1] and delta in (0, 1)")
    if space == "metric":
        val = 8.0 ** (p + 3) * k / (3 * eps**2) * (1 + k * math.log(n) + math.log(2 / delta))
    elif space == "euclidean":
        if d is None:
            raise ValidationError("the euclidean bound needs the dimension d")
        lk = math.log(k)
        val = c * 8.0**p * p * k * lk / eps**2 * (d * k * lk + math.log(1 / delta))
    else:
        raise ValidationError(f"unknown space {space!r}")
    # shave float noise so that exact-integer values do not ceil upward
    return max(1, math.ceil(val * (1 - 1e-12)))
