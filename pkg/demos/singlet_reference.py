"""
The quantum reference: singlet correlations and the 2*sqrt(2) bound
===================================================================

For comparison with the vessel statistic, the standard two-spin singlet:
expectation -(a . b) for unit measurement directions a and b.  Analyzer
angles are given per wing; the wings face each other, so a right-side
angle counts clockwise in the shared frame.  At the textbook settings
(0, 90, 45, 135) degrees the statistic reaches its quantum maximum
2*sqrt(2). No choice of settings can beat that bound, while the vessel
model sits at 4.
"""

import math

import numpy as np

from vesselsim import (
    TSIRELSON_BOUND,
    MeasurementDirection,
    singlet_bell_value,
    singlet_expectation,
    singlet_experiment,
    singlet_samples,
)

angles = (0.0, 90.0, 45.0, 135.0)
analytic = singlet_bell_value(angles)
print(f"Analytic statistic at angles {angles}: {analytic:.12f}")
print(f"Quantum bound 2*sqrt(2):               {TSIRELSON_BOUND:.12f}")

statistic = singlet_experiment(angles, seed=42, n_per_pair=200_000)
stderr = math.sqrt(sum(est.stderr**2 for est in statistic.components))
print(f"\nMonte Carlo at 200000 runs per pair: {statistic.value:.5f} "
      f"(+/- {stderr:.5f}), {statistic.classification.value}")
for estimate in statistic.components:
    print(f"  E({estimate.pair.label:4s}) = {estimate.mean:+.4f}")

# Perfect anti-correlation along a common axis, sampled.
z = MeasurementDirection(0.0, 0.0, 1.0)
left, right = singlet_samples(z, z, 10, np.random.default_rng(1))
print(f"\nEqual axes: expectation {singlet_expectation(z, z)}, "
      f"sampled products {(left * right).tolist()}")

# Random search over settings never exceeds the bound.
rng = np.random.default_rng(2)
best = max(abs(singlet_bell_value(tuple(rng.uniform(0, 360, 4)))) for _ in range(20_000))
print(f"\nBest of 20000 random settings quadruples: {best:.6f} "
      f"(bound {TSIRELSON_BOUND:.6f})")
