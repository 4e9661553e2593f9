"""Finite clock-and-shift representations of A_theta for rational theta.

Every pair ``i < j`` with ``theta_ij = p/d`` non-integral gets its own
tensor factor C^d on which ``U_i`` acts by ``C^p`` and ``U_j`` by the
cyclic shift ``S``; all other generators act trivially there.  Since
``C S = e(1/d) S C`` this gives ``U_i U_j = e(theta_ij) U_j U_i`` and the
generators of different pairs commute.  The dimension is the product of
the denominators, so this is meant as an oracle for small examples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import DimensionMismatch, NotRational, ThetaMismatch, UnsupportedGenerator
from .exact import Phase, SkewMatrix
from .sonn import Nu, Rho, act_on_theta
from .torus import TorusElement


@dataclass(frozen=True)
class PairFactor:
    i: int
    j: int
    p: int
    d: int


def clock(d: int, power: int = 1) -> sp.csr_matrix:
    k = np.arange(d)
    return sp.diags(np.exp(2j * np.pi * ((k * power) % d) / d), format="csr")


def shift(d: int, power: int = 1) -> sp.csr_matrix:
    """``e_k -> e_{k + power mod d}``."""
    k = np.arange(d)
    return sp.csr_matrix((np.ones(d, dtype=complex), ((k + power) % d, k)), shape=(d, d))


@dataclass(frozen=True)
class ClockShiftRep:
    n: int
    theta: SkewMatrix
    dim: int
    factors: tuple[PairFactor, ...]
    generators: tuple[sp.csr_matrix, ...]

    def monomial(self, x: Sequence[int]) -> sp.csr_matrix:
        """Image of ``U_1^{x_1} ... U_n^{x_n}``."""
        if len(x) != self.n:
            raise DimensionMismatch(f"exponent of length {len(x)} for n={self.n}")
        blocks = [clock(f.d, f.p * x[f.i]) @ shift(f.d, x[f.j]) for f in self.factors]
        if not blocks:
            return sp.identity(1, dtype=complex, format="csr")
        return reduce(lambda a, b: sp.kron(a, b, format="csr"), blocks)


def clock_shift_rep(theta: SkewMatrix) -> ClockShiftRep:
    if not isinstance(theta, SkewMatrix):
        raise NotRational("theta must be an exact rational SkewMatrix")
    n = theta.n
    factors = []
    for i in range(n):
        for j in range(i + 1, n):
            r = theta[i, j] % 1
            if r:
                factors.append(PairFactor(i, j, r.numerator, r.denominator))
    dim = int(np.prod([f.d for f in factors])) if factors else 1
    rep = ClockShiftRep(n, theta, dim, tuple(factors), ())
    gens = tuple(rep.monomial([int(k == i) for k in range(n)]) for i in range(n))
    return ClockShiftRep(n, theta, dim, tuple(factors), gens)


def eval_element(rep: ClockShiftRep, a: TorusElement) -> sp.csr_matrix:
    """Image of a symbolic element as a sparse matrix."""
    if a.theta != rep.theta:
        raise ThetaMismatch("element and representation use different theta")
    out = sp.csr_matrix((rep.dim, rep.dim), dtype=complex)
    for x, c in a.terms.items():
        out = out + complex(c) * rep.monomial(x)
    return out


def max_entry(m) -> float:
    m = sp.csr_matrix(m)
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


def relation_defect(theta: SkewMatrix, mono, box: int = 1) -> float:
    """Largest ``|M(x) M(y) - e(x theta y) M(y) M(x)|`` over ``x, y`` in the box."""
    n = theta.n
    vecs = list(itertools.product(range(-box, box + 1), repeat=n))
    mats = [mono(x) for x in vecs]
    worst = 0.0
    for x, mx in zip(vecs, mats):
        for y, my in zip(vecs, mats):
            ph = complex(Phase(theta.pairing(x, y)))
            worst = max(worst, max_entry(mx @ my - ph * (my @ mx)))
    return worst


def verify_iso_invariance(theta: SkewMatrix, generator, box: int = 1, tol: float = 1e-10) -> dict:
    """Check that the clock-shift generators also realise the transformed torus.

    For ``nu(N)`` the same generators satisfy the ``theta + N`` relations
    (the phases agree exactly).  For ``rho(R)`` the elements
    ``V_x = U_{R^t x}`` satisfy the ``R theta R^t`` relations.
    """
    rep = clock_shift_rep(theta)
    n = theta.n
    if isinstance(generator, Nu):
        new_theta = act_on_theta(generator.element(n), theta)
        vecs = list(itertools.product(range(-box, box + 1), repeat=n))
        exact = all(
            Phase(theta.pairing(x, y)) == Phase(new_theta.pairing(x, y)) for x in vecs for y in vecs
        )
        defect = relation_defect(new_theta, rep.monomial, box)
        return {"generator": "nu", "theta_prime": new_theta, "exact_phases": exact,
                "defect": defect, "pass": exact and defect < tol}
    if isinstance(generator, Rho):
        new_theta = act_on_theta(generator.element(n), theta)
        rt = generator.R.T

        def image(x):
            return rep.monomial([int(v) for v in rt.apply(list(x))])

        defect = relation_defect(new_theta, image, box)
        return {"generator": "rho", "theta_prime": new_theta, "defect": defect, "pass": defect < tol}
    raise UnsupportedGenerator("only nu and rho give isomorphic algebras")

