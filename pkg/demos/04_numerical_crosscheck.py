"""Cross-validate the expansions against a fractional predictor-corrector.

An independent Adams-Bashforth-Moulton integration of each equation tracks the
eigenmode expansion to well under a percent; the difference
delta(t) = X_num - X_spectral peaks at intermediate times, mirroring the
residual study.  (Step size is kept moderate here so the O(N^2) history stays
quick; the acceptance suite runs the full h = 1e-3 setting.)
"""

import numpy as np

from fracspec import (IntegratorConfig, abm_solve, build_spectrum,
                      compare_solutions, cubic, eval_trajectory, logistic,
                      riccati)

alpha = 0.75
cfg = IntegratorConfig(t_max=10.0, h=5e-3)

for spec in [riccati(alpha, 0.5), logistic(alpha, 0.75, 1.0), cubic(alpha, 0.5)]:
    num = abm_solve(spec, cfg)
    sp = eval_trajectory(build_spectrum(spec, 100), num.times)
    delta = compare_solutions(num, sp)
    i = int(np.argmax(np.abs(delta.values)))
    print(f"{spec.kind.value:9s} max|X_num - X_sp| = {abs(delta.values[i]):.5f} "
          f"at t = {delta.times[i]:.2f}")

# the integrator itself, pinned on the linear problem d^a X = -X whose exact
# solution is the Mittag-Leffler relaxation E_a(-t^a)
from fracspec import MlParams, ml_eval

lin = cubic(alpha, 1.0, a=1.0, b=0.0)
traj = abm_solve(lin, IntegratorConfig(t_max=5.0, h=2e-3))
exact = ml_eval(-traj.times[1:] ** alpha, MlParams(alpha=alpha))
print(f"\nlinear relaxation check: max integration error = "
      f"{np.max(np.abs(traj.values[1:] - exact)):.2e}")
