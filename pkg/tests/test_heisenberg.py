from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import skew_matrices
from nct_morita.errors import BoundaryViolation, DimensionTooSmall, Theta11Singular
from nct_morita.exact import RatMatrix, SkewMatrix
from nct_morita.heisenberg import (
    FAMILIES,
    JO,
    Connection,
    GridSpec,
    build_embeddings,
    connection_apply,
    curvature_estimate,
    gaussian,
    hermitian_defect,
    leibniz_defect,
    left_action,
    right_action,
    shift_p,
    translate_t,
    verify_module,
    x_battery,
)

SMALL = GridSpec(512, 8.0, 4)
HALF = SkewMatrix.from_upper(2, ["1/2"])
THIRD = SkewMatrix.from_upper(2, ["1/3"])
N3 = SkewMatrix.from_upper(3, ["1/3", "1/5", "-1/4"])


def closed_form(spec, a, b, z1, z2):
    """``e(z1 t) g(t - z2)`` for ``g = exp(-pi (t - a)^2) e(b t)``."""
    t = spec.t
    return np.exp(2j * np.pi * z1 * t - np.pi * (t - z2 - a) ** 2 + 2j * np.pi * b * (t - z2))


def test_embeddings_n2():
    e = build_embeddings(HALF)
    assert e.T11 == RatMatrix([[1, 0], [0, Fraction(-1, 2)]])
    assert e.T11.T @ JO @ e.T11 == -HALF.theta11
    assert e.S == RatMatrix([[0, -2], [-1, 0]])
    assert e.theta_prime == SkewMatrix.from_upper(2, [-2])


def test_embeddings_n3_t32_is_zero():
    e = build_embeddings(N3)
    assert e.T32 == RatMatrix([[0]])
    assert e.T.T @ e.J2 @ e.T == -N3


def test_embedding_errors():
    with pytest.raises(Theta11Singular):
        build_embeddings(SkewMatrix.from_upper(3, [0, 1, 2]))
    with pytest.raises(DimensionTooSmall):
        build_embeddings(SkewMatrix([[0]]))


@given(skew_matrices(min_n=2, max_n=5, nonzero_theta11=True))
def test_embedding_identities(theta):
    e = build_embeddings(theta)
    assert e.T.T @ e.J2 @ e.T == -theta
    assert (e.S.T @ e.J2 @ e.T).is_integer()
    assert e.S.T @ e.J2 @ e.S == e.theta_prime
    if e.q:
        assert e.T32.T - e.T32 == theta.theta22


@pytest.mark.parametrize("x", [(1, 0), (0, 1), (2, -1)])
@pytest.mark.parametrize("a, b", [(0.0, 0.0), (1.0, 1 / 3)])
def test_right_action_closed_form(x, a, b):
    e = build_embeddings(THIRD)
    g = gaussian(SMALL, 0, a, b)
    z1, z2 = (float(v) for v in e.right_vector(x))
    got = right_action(e, g, x).values
    assert np.max(np.abs(got - closed_form(SMALL, a, b, z1, z2))) < 1e-8


@pytest.mark.parametrize("x", [(1, 0), (0, 1), (1, 1)])
def test_left_action_closed_form(x):
    e = build_embeddings(HALF)
    g = gaussian(SMALL, 0, -1.0, 1 / 3)
    z1, z2 = (float(v) for v in e.left_vector(x))
    got = left_action(e, g, x).values
    assert np.max(np.abs(got - closed_form(SMALL, -1.0, 1 / 3, z1, z2))) < 1e-8


def test_zero_acts_trivially():
    e = build_embeddings(N3)
    g = gaussian(SMALL, 1, 0.5, 0.0, (1,))
    assert np.allclose(right_action(e, g, (0, 0, 0)).values, g.values, atol=1e-15)
    assert np.allclose(left_action(e, g, (0, 0, 0)).values, g.values, atol=1e-15)


def test_p_connection_is_multiplication():
    e = build_embeddings(N3)
    g = gaussian(SMALL, 1, 0.0, 0.0, (1,))
    out = connection_apply(Connection(3, e), g)
    assert np.allclose(out.values, -g.values * SMALL.p_values[None, :])


def test_connection_index_checked():
    with pytest.raises(ValueError):
        Connection(3, build_embeddings(HALF))


@pytest.mark.parametrize("theta", [THIRD, N3])
def test_leibniz(theta):
    e = build_embeddings(theta)
    g = gaussian(SMALL, e.q, 0.0, 1 / 3, (0,) * e.q)
    for x in x_battery(theta.n):
        assert leibniz_defect(e, g, x) < 1e-6


@pytest.mark.parametrize("theta", [HALF, THIRD, N3])
def test_curvature(theta):
    e = build_embeddings(theta)
    g = gaussian(SMALL, e.q, 1.0, 0.0, (0,) * e.q)
    assert curvature_estimate(e, g) == pytest.approx(-1 / float(theta[0, 1]), abs=1e-6)


def test_hermitian():
    e = build_embeddings(N3)
    r = gaussian(SMALL, 1, 0.0, 1 / 3, (0,))
    s = gaussian(SMALL, 1, 1.0, 0.0, (0,))
    for i in (1, 2, 3):
        assert hermitian_defect(Connection(i, e), r, s) < 1e-8


def test_boundary_violations():
    g = gaussian(SMALL, 1, 0.0, 0.0, (4,))
    with pytest.raises(BoundaryViolation):
        translate_t(g, 7.5)
    with pytest.raises(BoundaryViolation):
        shift_p(g, (-1,))
    # fine without the check, and fine the other way
    translate_t(g, 7.5, strict=False)
    shift_p(g, (1,))


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1000, 8.0, 4)
    with pytest.raises(ValueError):
        GridSpec(512, -1.0, 4)
    with pytest.raises(ValueError):
        GridSpec(512, 8.0, 2)


def test_verify_half_at_defaults():
    report = verify_module(HALF)
    assert report.passed, report.residuals
    assert set(report.residuals) == set(FAMILIES)
    preds = dict(report.predictions)
    assert preds[(1, 0)] == (0, 2)
    assert report.curvature_expected == -2


def test_verify_n3_cross_term():
    report = verify_module(N3, GridSpec(1024, 12.0, 6))
    assert report.passed, report.residuals
    preds = dict(report.predictions)
    assert preds[(0, 0, 1)] == (Fraction(-3, 4), Fraction(-3, 5), 1)


def test_verify_n4_small_grid():
    theta = SkewMatrix.from_upper(4, ["1/3", "1/5", "-1/4", "2/7", "1/2", "-1/6"])
    xs = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, -1, 1, 0)]
    report = verify_module(theta, GridSpec(256, 8.0, 4), xs=xs)
    assert report.passed, report.residuals


def test_verify_singular_reports_error():
    report = verify_module(SkewMatrix.from_upper(2, [0]))
    assert not report.passed
    assert report.error.startswith("Theta11Singular")


def test_verify_boundary_reports_error():
    report = verify_module(THIRD, GridSpec(64, 2.0, 3))
    assert not report.passed
    assert report.error.startswith("BoundaryViolation")


def test_diagnostics_expose_printed_conventions():
    report = verify_module(N3, GridSpec(1024, 12.0, 6), diagnostics=True)
    assert report.passed
    assert report.diagnostics["alt_right_relation"] > 0.1
    assert report.diagnostics["alt_commutant"] > 0.1


def _n2(denominators):
    fracs = [Fraction(k, d) for d in denominators for k in range(1, d)]
    return skew_matrices(n=2, entries=st.sampled_from(fracs))


@settings(max_examples=8)
@given(_n2((2, 3)))
def test_random_n2_passes(theta):
    assert verify_module(theta, SMALL).passed


@settings(max_examples=8)
@given(_n2((5, 7, 9)))
def test_wide_translations_fail_loudly(theta):
    # left translations scale like 1/theta_12 and can leave the window
    report = verify_module(theta, SMALL)
    assert report.passed or report.error.startswith("BoundaryViolation")
