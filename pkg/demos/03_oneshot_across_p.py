"""One coreset, every power in [1, 3].

A fixed-p coreset is tuned to its own p. The one-shot coreset samples from
sensitivities summed over a geometric grid of powers, so a single sample
stays accurate as p moves. Here both are probed across the range.
"""
from kcoreset import build_fixed_p, build_oneshot, generate
from kcoreset.oneshot import build_grid
from kcoreset.oracle import DP, measure_error, sample_queries
from kcoreset.synth import heavy_tailed_mixture

X = generate(heavy_tailed_mixture(n=20_000, seed=0))
k, m = 5, 4000
grid = build_grid(3.0, n=X.n)
print(f"grid spacing {grid.delta_spacing:.4f}, {len(grid.grid)} powers:",
      ", ".join(f"{g:.3g}" for g in grid.grid))

queries = sample_queries(X, k, 2, count=50, strategy=DP, seed=1)
one = build_oneshot(X, k, 3.0, 0.1, m, seed=0)
at_one = build_fixed_p(X, k, 1.0, 0.1, m, seed=0)
print("   p   one-shot   fixed at p=1")
for p in (1, 1.5, 2, 2.5, 3):
    a = measure_error(X, one, queries, p).max_error
    b = measure_error(X, at_one, queries, p).max_error
    print(f"{p:4}   {a:8.4f}   {b:8.4f}")
