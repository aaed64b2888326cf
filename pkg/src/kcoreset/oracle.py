"""Ground-truth oracles and empirical coreset evaluation."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .coreset import build_fixed_p, uniform_coreset
from .metric import Dataset, Query, QueryLike, ValidationError, as_query, cost, powp, \
    query_distances, query_from_indices, weighted_cost
from .seeding import SeedLike, dp_sample, make_rng, seed_entropy, sub_seed

MAX_ENUMERATION = 10**6

UNIFORM = "uniform_subsets"
DP = "dp_sampled"
PERTURBED = "perturbed_solution"
STRATEGIES = (UNIFORM, DP, PERTURBED)


def _num_subsets(n: int, k: int) -> int:
    return sum(math.comb(n, j) for j in range(1, min(k, n) + 1))


def exact_sensitivity(dataset: Dataset, k: int, p: float, chunk: int = 4096) -> np.ndarray:
    """Exact sensitivity over all center sets of at most ``k`` data points.

    For Euclidean data this is the sensitivity with centers restricted to
    the data points, a lower bound on the continuous-center one. A center
    set with zero cost contributes ratio 0; if every center set has zero
    cost (all points coincide) each point has the equal share 1.
    """
    n = dataset.n
    total = _num_subsets(n, k)
    if total > MAX_ENUMERATION:
        raise ValidationError(f"{total} center sets exceed the enumeration limit {MAX_ENUMERATION}")
    Dp = powp(dataset.pairwise(), p)
    sigma = np.zeros(n)
    if not np.any(Dp > 0):
        return np.ones(n)
    for size in range(1, min(k, n) + 1):
        combos = itertools.combinations(range(n), size)
        while True:
            block = np.array(list(itertools.islice(combos, chunk)), dtype=np.intp)
            if block.size == 0:
                break
            # (n, batch): cost of each point under each center set
            per_point = Dp[:, block].min(axis=2)
            phi = per_point.mean(axis=0)
            with np.errstate(invalid="ignore", divide="ignore"):
                ratio = np.where(per_point > 0, per_point / phi, 0.0)
            np.maximum(sigma, ratio.max(axis=1), out=sigma)
    return sigma


@dataclass(frozen=True, eq=False)
class QueryFamily:
    queries: tuple
    strategy: str
    seed: tuple

    def __len__(self):
        return len(self.queries)


def sample_queries(dataset: Dataset, k: int, p: float, count: int, strategy: str,
                   seed: SeedLike) -> QueryFamily:
    """Finite family of candidate solutions used to probe a coreset.

    Query ``i`` is drawn from the sub-seed ``(seed, i)``. ``dp_sampled``
    queries are exactly ``dp_sample(dataset, k, p, (seed, i))``.
    ``perturbed_solution`` jitters a D^p-sampled solution with Gaussian
    noise of 10% of its mean point-to-center distance (Euclidean only).
    """
    if count < 1:
        raise ValidationError("count must be positive")
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown query strategy {strategy!r}")
    if strategy == PERTURBED and not dataset.is_euclidean:
        raise ValidationError("perturbed_solution queries need euclidean data")
    if strategy == UNIFORM and k > dataset.n:
        raise ValidationError(f"cannot draw {k} distinct centers from {dataset.n} points")
    base = seed_entropy(seed)
    out = []
    for i in range(count):
        rng = make_rng(base + (i,))
        if strategy == UNIFORM:
            idx = rng.choice(dataset.n, size=k, replace=False)
            out.append(query_from_indices(dataset, idx))
            continue
        idx = dp_sample(dataset, k, p, rng)
        _, first = np.unique(idx, return_index=True)
        Q = query_from_indices(dataset, idx[np.sort(first)])
        if strategy == PERTURBED:
            scale = 0.1 * float(np.mean(query_distances(dataset, Q)))
            Q = as_query(dataset, Q.centers + rng.normal(0.0, scale, size=Q.centers.shape))
        out.append(Q)
    return QueryFamily(tuple(out), strategy, base)


@dataclass(frozen=True)
class ErrorReport:
    per_query: tuple
    max_error: float
    mean_error: float
    p: float
    zero_cost: tuple = ()
    meta: dict = field(default_factory=dict)


def measure_error(dataset: Dataset, coreset, family, p: float) -> ErrorReport:
    """Relative cost error ``|φ_X - φ_C| / φ_X`` for each query.

    ``family`` is a :class:`QueryFamily` or any sequence of queries. Queries
    with zero true cost are listed in ``zero_cost`` instead of being divided.
    """
    queries = family.queries if isinstance(family, QueryFamily) else tuple(family)
    errs, zero = [], []
    for i, Q in enumerate(queries):
        true = cost(dataset, Q, p)
        est = weighted_cost(coreset, Q, p, dataset)
        if true == 0:
            zero.append(i)
            continue
        errs.append((i, abs(true - est) / true))
    vals = [e for _, e in errs]
    return ErrorReport(
        per_query=tuple(errs),
        max_error=max(vals) if vals else 0.0,
        mean_error=float(np.mean(vals)) if vals else 0.0,
        p=float(p),
        zero_cost=tuple(zero),
    )


def tightness_instance(n: int, p: float, spacing: float):
    """1-D instance on which the interpolation bound is tight up to constants.

    One point at ``n^(1/(p(2+Δ)))``, ``round(sqrt n)`` points at 1, the rest
    at ``n^(-1/(p(2+Δ)))``; the query is the origin. Returns
    ``(dataset, query, witness)`` where the witness is a point at 1.
    """
    if not 0 < spacing <= 1:
        raise ValidationError("spacing must lie in (0, 1]")
    root = int(round(math.sqrt(n)))
    rest = n - root - 1
    if rest < n / 2 or root < 1:
        raise ValidationError(f"n={n} is too small for the construction")
    e = 1.0 / (p * (2 + spacing))
    x1, x3 = n**e, n ** (-e)
    pts = np.concatenate([[x1], np.ones(root), np.full(rest, x3)])
    ds = Dataset.from_points(pts[:, None])
    return ds, as_query(ds, [[0.0]]), 1


def tightness_sides(dataset: Dataset, Q: QueryLike, x: int, p: float, spacing: float):
    """``(LHS, RHS)`` of the tightness inequality at point ``x``.

    LHS = d^{p(1+Δ/2)}/φ^{p(1+Δ/2)};
    RHS = n^{Δ/6}/9 * (d^p/φ^p + d^{p(1+Δ)}/φ^{p(1+Δ)}).
    """
    d = float(query_distances(dataset, Q, [x])[0])

    def ratio(r):
        return float(powp(d, r)) / cost(dataset, Q, r)

    lhs = ratio(p * (1 + spacing / 2))
    rhs = dataset.n ** (spacing / 6) / 9 * (ratio(p) + ratio(p * (1 + spacing)))
    return lhs, rhs


def hoelder_check(dataset: Dataset, Q: QueryLike, p: float, factor: float) -> float:
    """``cost(p * factor) - cost(p) ** factor``; non-negative for ``factor >= 1``."""
    if p < 1 or factor < 1:
        raise ValidationError("need p >= 1 and factor >= 1")
    return cost(dataset, Q, p * factor) - cost(dataset, Q, p) ** factor


@dataclass(frozen=True)
class BaselineComparison:
    sensitivity_max: np.ndarray
    uniform_max: np.ndarray

    @property
    def win_fraction(self) -> float:
        return float(np.mean(self.sensitivity_max < self.uniform_max))


def compare_uniform_baseline(dataset: Dataset, k: int, p: float, m: int, trials: int,
                             seed: SeedLike, delta: float = 0.1, queries: int = 50,
                             strategy: str = UNIFORM) -> BaselineComparison:
    """Paired max errors of a sensitivity coreset and a uniform subsample.

    Trial ``t`` builds both coresets and evaluates them on one shared query
    family, all from sub-seeds of ``(seed, t)``.
    """
    base = seed_entropy(seed)
    sens, unif = [], []
    for t in range(trials):
        fam = sample_queries(dataset, k, p, queries, strategy, sub_seed(base, t, 2))
        c_s = build_fixed_p(dataset, k, p, delta, m, sub_seed(base, t, 0))
        c_u = uniform_coreset(dataset, m, sub_seed(base, t, 1))
        sens.append(measure_error(dataset, c_s, fam, p).max_error)
        unif.append(measure_error(dataset, c_u, fam, p).max_error)
    return BaselineComparison(np.array(sens), np.array(unif))
