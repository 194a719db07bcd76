"""Solve the three fractional rate equations and tabulate the trajectories.

Each solution is a truncated eigenmode expansion
X(t) = offset + sum_k c_k E_alpha(lambda_k t^alpha); at alpha = 1 it collapses
onto the classical closed forms, shown side by side for the logistic case.
"""

import numpy as np

from fracspec import (build_spectrum, closed_form_integer, cubic,
                      eval_trajectory, logistic, riccati)

alpha = 0.75
grid = np.linspace(0.0, 10.0, 11)

print(f"fractional order alpha = {alpha}\n")
for spec in [riccati(alpha, 0.0), logistic(alpha, 0.75, 1.0), cubic(alpha, 1.0)]:
    sol = build_spectrum(spec, terms=100)
    traj = eval_trajectory(sol, grid)
    print(f"{spec.kind.value:9s} x0={spec.x0}:")
    print("   t: " + " ".join(f"{t:7.1f}" for t in traj.times))
    print("   X: " + " ".join(f"{v:7.4f}" for v in traj.values))
    print()

# at alpha = 1 the mode sum telescopes onto the classical solution
spec = logistic(1.0, 0.75, 1.0)
sol = build_spectrum(spec, terms=100)
series = eval_trajectory(sol, grid).values
closed = closed_form_integer(spec, grid)
print("logistic, alpha = 1: series vs closed form")
print(f"   largest gap over the grid: {np.max(np.abs(series - closed)):.3e}")
