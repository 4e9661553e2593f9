from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import invertible_rational, skew_matrices, small_fractions, unimodular
from nct_morita.errors import NonSquare, NotRational, NotSkew, SingularMatrix
from nct_morita.exact import Phase, RatMatrix, SkewMatrix, as_rational, is_skew, phase_mul, rat_inverse


def test_identity_inverse():
    assert rat_inverse(RatMatrix.identity(3)) == RatMatrix.identity(3)


def test_inverse_of_half_rotation():
    m = RatMatrix([[0, "1/2"], ["-1/2", 0]])
    inv = rat_inverse(m)
    assert inv == RatMatrix([[0, -2], [2, 0]])
    assert m @ inv == RatMatrix.identity(2)


def test_singular():
    with pytest.raises(SingularMatrix):
        rat_inverse(RatMatrix([[1, 1], [1, 1]]))


def test_inverse_matches_numpy_on_fixed_matrix():
    m = RatMatrix([["1/3", 2, 0], [1, "-1/2", 4], [0, 5, "7/5"]])
    assert np.allclose(rat_inverse(m).to_numpy(), np.linalg.inv(m.to_numpy()))
    assert float(m.det()) == pytest.approx(np.linalg.det(m.to_numpy()))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0] * 4] * 4, True),
        ([[0, "1/3"], ["-1/3", 0]], True),
        ([[0, "1/3"], ["1/3", 0]], False),
        ([[1, 0], [0, -1]], False),
    ],
)
def test_is_skew(rows, expected):
    assert is_skew(RatMatrix(rows)) is expected


def test_is_skew_rejects_rectangles():
    with pytest.raises(NonSquare):
        is_skew(RatMatrix([[0, 1, 2], [-1, 0, 3]]))


def test_skew_matrix_validates():
    with pytest.raises(NotSkew):
        SkewMatrix([[0, 1], [1, 0]])
    with pytest.raises(NonSquare):
        SkewMatrix([[0, 1, 2]])


def test_floats_rejected():
    with pytest.raises(NotRational):
        as_rational(0.5)
    with pytest.raises(NotRational):
        RatMatrix([[0.5]])
    with pytest.raises(NotRational):
        as_rational(True)
    assert as_rational(" -3/6 ") == Fraction(-1, 2)


def test_block_views():
    th = SkewMatrix.from_upper(4, ["1/2", 1, 2, 3, 4, 5])
    assert th.theta11 == RatMatrix([[0, "1/2"], ["-1/2", 0]])
    assert th.theta12 == RatMatrix([[1, 2], [3, 4]])
    assert th.theta21 == -th.theta12.T
    assert th.theta22 == RatMatrix([[0, 5], [-5, 0]])


@pytest.mark.parametrize(
    "p, q, r",
    [(0, "1/5", "1/5"), ("1/3", "1/3", "2/3"), ("2/3", "2/3", "1/3"), ("-1/4", "1/4", 0)],
)
def test_phase_mul(p, q, r):
    assert phase_mul(Phase(as_rational(p)), Phase(as_rational(q))) == Phase(as_rational(r))


@given(small_fractions, small_fractions, small_fractions)
def test_phase_group_laws(a, b, c):
    pa, pb, pc = Phase(a), Phase(b), Phase(c)
    assert (pa * pb) * pc == pa * (pb * pc)
    assert pa * Phase(0) == pa
    assert pa * pa.inverse() == Phase(0)
    assert 0 <= pa.exponent < 1
    assert pa.inverse() == Phase(1 - pa.exponent)
    assert complex(pa * pb) == pytest.approx(complex(pa) * complex(pb))


@given(st.integers(1, 4).flatmap(invertible_rational))
def test_double_inverse(m):
    assert rat_inverse(rat_inverse(m)) == m
    assert m @ rat_inverse(m) == RatMatrix.identity(m.shape[0])


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(skew_matrices(n=n), unimodular(n))))
def test_congruence_keeps_skew(pair):
    theta, r = pair
    assert is_skew(r @ theta @ r.T)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(invertible_rational(n), invertible_rational(n))))
def test_det_multiplicative(pair):
    a, b = pair
    assert (a @ b).det() == a.det() * b.det()
