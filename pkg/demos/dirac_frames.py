"""
Dirac operators along a Morita equivalence
==========================================

A Dirac operator on the torus is fixed by a frame tau.  Here the frame
follows theta through sigma2 and back, and its commutators with the
generators are compared with the connection prediction.
"""

from nct_morita import DiracData, SkewMatrix, TorusElement, dirac_commutator, transform_sigma2
from nct_morita.dirac import frame_prediction, involution_check

theta = SkewMatrix.from_upper(2, ["1/2"])
d = DiracData.standard(2)

moved = transform_sigma2(d, theta)
print("new frame:", moved.tau.to_strings())
print("spin shift carried without a known rule:", moved.mu_shift_unverified)

# the round trip through sigma2(theta) restores the frame exactly
report = involution_check(d, theta)
print("restored:", report["tau_restored"].to_strings(), report["pass"])

# [D', U_x] has component i equal to (tau'_i . x) U_x
for x in [(1, 0), (0, 1), (2, -1)]:
    u = TorusElement.monomial(theta, x)
    comps = dirac_commutator(moved, u).components
    # a zero component stores no terms
    scalars = [complex(c.terms[x]).real if x in c.terms else 0.0 for c in comps]
    print(x, scalars, "predicted", [str(v) for v in frame_prediction(theta, x)])
