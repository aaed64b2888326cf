"""Build a k-means coreset and watch the error fall as it grows.

The data is an unbalanced mixture with heavy tails and a tiny far cluster,
the kind of input where uniform subsampling is fragile.
"""
import numpy as np

from kcoreset import build_fixed_p, generate
from kcoreset.oracle import DP, measure_error, sample_queries
from kcoreset.synth import heavy_tailed_mixture

X = generate(heavy_tailed_mixture(n=20_000, seed=0))
k, p = 5, 2
queries = sample_queries(X, k, p, count=50, strategy=DP, seed=1)

for m in (100, 300, 1000, 3000, 10_000):
    errs = [measure_error(X, build_fixed_p(X, k, p, 0.1, m, seed), queries, p).max_error
            for seed in range(5)]
    print(f"m={m:6d}  median max relative error {np.median(errs):.4f}")

c = build_fixed_p(X, k, p, 0.1, 500, seed=0)
print("provenance:", {key: c.provenance[key] for key in ("kind", "p", "k", "m", "mean_S")})
print("total weight", c.weights.sum())  # 1 in expectation: the weighted cost estimates a mean
