"""
Inner fluctuations on the circle
================================

On the circle the real structure has sign -1, so a self-adjoint gauge
potential cancels against its mirror image and D' = D.
"""

from nct_morita import SkewMatrix, TorusElement, fluctuate_dim1, star
from nct_morita.cyclotomic import Cyclotomic

circle = SkewMatrix([[0]])

# c = 1/2 + (1 + i/3) e(t) + (1 - i/3) e(-t)
c = TorusElement(
    circle,
    {(0,): Cyclotomic.rational("1/2"), (1,): Cyclotomic.gaussian(1, "1/3"), (-1,): Cyclotomic.gaussian(1, "-1/3")},
)
print("self-adjoint:", star(c) == c)
print(fluctuate_dim1(c, cutoff=64))

# an anti-self-adjoint potential doubles instead of cancelling
a = TorusElement(circle, {(1,): 1, (-1,): -1})
print(fluctuate_dim1(a, cutoff=64))
