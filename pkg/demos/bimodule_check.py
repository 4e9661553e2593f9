"""
Checking the Heisenberg bimodule on a grid
==========================================

Sample Gaussians on R x Z^q, let both tori act by time-frequency
shifts, and look at the residual of every identity the bimodule
should satisfy.
"""

import numpy as np

from nct_morita import GridSpec, SkewMatrix, build_embeddings, verify_module
from nct_morita.heisenberg import gaussian, left_action, right_action

theta = SkewMatrix.from_upper(3, ["1/3", "1/5", "-1/4"])
e = build_embeddings(theta)
print("T =", e.T.to_strings())
print("S =", e.S.to_strings())
print("sigma2(theta) =", e.theta_prime.to_strings())

# the two actions commute on a single test vector
spec = GridSpec(1024, 12.0, 6)
g = gaussian(spec, 1, a=0.5, b=1 / 3, p0=(1,))
x, y = (1, 0, 1), (0, 1, -1)
lr = left_action(e, right_action(e, g, y), x)
rl = right_action(e, left_action(e, g, x), y)
print("commutant defect:", np.linalg.norm(lr.values - rl.values) / np.linalg.norm(g.values))

# the full battery, with the mirrored sign conventions for comparison
report = verify_module(theta, spec, diagnostics=True)
for name, value in report.residuals.items():
    print(f"{name:15s} {value:.2e}")
print("curvature", report.curvature_estimate, "expected", report.curvature_expected)
print("mirrored conventions:", {k: round(v, 3) for k, v in report.diagnostics.items()})
print("pass:", report.passed)
