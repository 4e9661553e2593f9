"""
Moving a deformation matrix around its SO(n,n|Z) orbit
======================================================

Apply the three kinds of generators to a rational theta and check
that sigma2 undoes itself.
"""

from nct_morita import SIGMA2, Nu, Rho, RatMatrix, SkewMatrix, word_act
from nct_morita.sonn import GeneratorWord, verify_membership

# a 3-torus with all three commutation phases switched on
theta = SkewMatrix.from_upper(3, ["1/3", "1/5", "2/7"])
print("theta =", theta.to_strings())

# integer shifts only change theta by an integer skew matrix
shift = Nu(RatMatrix([[0, 1, 0], [-1, 0, 2], [0, -2, 0]]))
print("nu     :", word_act([shift], theta).to_strings())

# a unimodular change of basis acts by congruence
swap = Rho(RatMatrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
print("rho    :", word_act([swap], theta).to_strings())

# sigma2 inverts the top 2x2 block; doing it twice gets theta back
once = word_act([SIGMA2], theta)
print("sigma2 :", once.to_strings())
print("twice  :", word_act([SIGMA2, SIGMA2], theta) == theta)

# every word is a genuine element of SO(3,3|Z)
word = GeneratorWord([shift, SIGMA2, swap, SIGMA2])
print("member :", verify_membership(word.element(3).matrix))
print("theta' :", word_act(word, theta).to_strings())
