"""How loose is the sensitivity bound?

On a handful of small inputs we enumerate every center set to get the true
sensitivities, then compare them with the cheap upper bound that drives
sampling. The bound should sit above the truth everywhere; how far above
tells you how much sample size the bound wastes.
"""
import numpy as np

from kcoreset import Dataset, exact_sensitivity, sensitivity_bound

# the three points {0, 1, 3}: a case small enough to check by hand
X = Dataset.from_points([[0.0], [1.0], [3.0]])
print("exact, k=1 p=1:", exact_sensitivity(X, 1, 1))  # 1.8, 1.2, 2.25

rng = np.random.default_rng(0)
for k, p in [(1, 1), (2, 1), (2, 2)]:
    X = Dataset.from_points(rng.normal(size=(10, 2)))
    sigma = exact_sensitivity(X, k, p)
    prof = sensitivity_bound(X, k, p, delta=0.1, seed=1)
    slack = prof.s / sigma
    print(f"k={k} p={p}: sum sigma={sigma.sum():6.2f}  mean bound={prof.mean_S:9.1f}  "
          f"dominates={bool(np.all(prof.s >= sigma))}  median slack={np.median(slack):7.1f}x")
