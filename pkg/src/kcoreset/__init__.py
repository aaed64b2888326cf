"""Coresets for k-clustering with power p, for one p or all p in [1, p_max] at once.

Quick start::

    from kcoreset import Dataset, build_fixed_p, build_oneshot, weighted_cost, cost

    X = Dataset.from_points(points)
    C = build_oneshot(X, k=5, p_max=3, delta=0.1, m=5000, seed=0)
    weighted_cost(C, Q, 2.5)   # close to cost(X, Q, 2.5) for every Q with |Q| <= 5
"""
from .coreset import WeightedCoreset, build_fixed_p, importance_sample, theoretical_sample_size, uniform_coreset
from .metric import (Dataset, Partition, Query, ValidationError, as_query, assign, cost,
                     point_to_query_distance, subset_cost, weighted_cost)
from .oneshot import GridSpec, build_grid, build_oneshot, interpolation_bound_check, oneshot_sensitivity
from .oracle import (ErrorReport, QueryFamily, compare_uniform_baseline, exact_sensitivity, hoelder_check,
                     tightness_instance, measure_error, sample_queries)
from .seeding import SeedSolution, best_of_runs, dp_sample
from .sensitivity import SensitivityProfile, mean_sensitivity, sensitivity_bound
from .synth import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "Dataset", "Query", "Partition", "ValidationError", "as_query", "assign", "cost", "subset_cost",
    "weighted_cost", "point_to_query_distance",
    "dp_sample", "best_of_runs", "SeedSolution",
    "sensitivity_bound", "mean_sensitivity", "SensitivityProfile",
    "WeightedCoreset", "importance_sample", "build_fixed_p", "uniform_coreset", "theoretical_sample_size",
    "GridSpec", "build_grid", "oneshot_sensitivity", "build_oneshot", "interpolation_bound_check",
    "exact_sensitivity", "sample_queries", "measure_error", "tightness_instance", "hoelder_check",
    "compare_uniform_baseline", "QueryFamily", "ErrorReport",
    "SynthSpec", "generate",
]
