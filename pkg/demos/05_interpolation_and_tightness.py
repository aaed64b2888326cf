"""The two inequalities behind the one-shot construction, checked numerically.

Interpolation: a point's cost share at an intermediate power is controlled by
its shares at the two neighbouring grid powers, at a price of n^(theta*Δ).
Tightness: a three-level 1-D instance shows a polynomial price in n cannot be
avoided.
"""
import numpy as np

from kcoreset import Dataset
from kcoreset.oneshot import interpolation_bound_check
from kcoreset.oracle import tightness_instance, tightness_sides

rng = np.random.default_rng(0)
X = Dataset.from_points(rng.normal(size=(200, 2)))
Q = rng.normal(size=(3, 2))
margins = [interpolation_bound_check(X, Q, 2.0, 0.5, theta, x=7) for theta in np.linspace(0, 1, 6)]
print("interpolation margins (RHS - LHS) for theta 0..1:", np.round(margins, 5))

for n in (10**4, 10**6):
    for spacing in (0.5, 1.0):
        ds, q, w = tightness_instance(n, p=2, spacing=spacing)
        lhs, rhs = tightness_sides(ds, q, w, 2, spacing)
        print(f"n={n:>7} spacing={spacing}: LHS {lhs:9.3f} >= RHS {rhs:8.3f}  ratio {lhs / rhs:.1f}")
