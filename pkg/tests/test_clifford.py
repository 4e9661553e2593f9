import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nct_morita.clifford import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    CliffordRep,
    clifford_generators,
    positivity_defect,
    verify_clifford,
)


def test_n1():
    rep = clifford_generators(1)
    assert rep.dim == 1
    assert rep.generators[0].tolist() == [[1]]
    assert verify_clifford(rep).passed


def test_n2_is_pauli_pair():
    gens = clifford_generators(2).generators
    assert np.array_equal(gens[0], SIGMA_X)
    assert np.array_equal(gens[1], SIGMA_Y)


def test_n3_appends_sigma_z():
    gens = clifford_generators(3).generators
    assert np.array_equal(gens[2], SIGMA_Z)


def test_n4_passes():
    rep = verify_clifford(clifford_generators(4), 1e-12)
    assert rep.passed
    assert rep.anticommutator_defect == 0


def test_scaled_generator_fails():
    rep = clifford_generators(4)
    bad = CliffordRep(rep.n, rep.dim, (2 * rep.generators[0],) + rep.generators[1:])
    report = verify_clifford(bad)
    assert not report.passed
    assert report.anticommutator_defect == pytest.approx(6)


def test_non_hermitian_fails():
    rep = clifford_generators(2)
    bad = CliffordRep(2, 2, (rep.generators[0], 1j * SIGMA_Z @ rep.generators[0] @ rep.generators[0]))
    assert not verify_clifford(bad).passed


def test_generators_are_read_only():
    g = clifford_generators(3).generators[0]
    with pytest.raises(ValueError):
        g[0, 0] = 5


@pytest.mark.parametrize("n", range(1, 13))
def test_dimensions(n):
    rep = clifford_generators(n)
    assert rep.dim == 2 ** (n // 2)
    assert len(rep.generators) == n
    assert all(g.shape == (rep.dim, rep.dim) for g in rep.generators)


@pytest.mark.parametrize("n", range(1, 9))
def test_relations(n):
    report = verify_clifford(clifford_generators(n), 1e-12)
    assert report.passed
    assert report.anticommutator_defect < 1e-12
    assert report.adjoint_defect < 1e-12


def test_tol_must_be_positive():
    with pytest.raises(ValueError):
        verify_clifford(clifford_generators(2), 0)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), arrays(complex, n, elements=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)))))
def test_positivity(args):
    n, c = args
    assert positivity_defect(clifford_generators(n), c) < 1e-10
