"""Equivariant Dirac operators and their transformation under SO(n,n|Z) generators.

A Dirac operator ``D = sum_i (tau_i . delta) A_i + B`` is stored by its
frame ``tau`` (column i is ``tau_i``), an optional constant self-adjoint
bounded part ``B`` on the spinor space, and the spin-shift vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ActionUndefined,
    DimensionMismatch,
    SingularMatrix,
    Theta11Singular,
)
from .exact import RatMatrix, SkewMatrix, as_rational, rat_inverse
from .sonn import Nu, Rho, Sigma2, Token, act_on_theta, check_unimodular, sigma2_block

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class DiracData:
    n: int
    tau: RatMatrix
    B: np.ndarray | None = field(default=None, compare=False)
    mu_shift: tuple[Fraction, ...] = ()
    # set once a sigma2 step has been taken: the spin shift is carried
    # through without a known transformation law
    mu_shift_unverified: bool = False

    def __post_init__(self):
        tau = self.tau if isinstance(self.tau, RatMatrix) else RatMatrix(self.tau)
        if tau.shape != (self.n, self.n):
            raise DimensionMismatch(f"tau is {tau.shape}, expected {self.n}x{self.n}")
        if tau.det() == 0:
            raise SingularMatrix("tau columns must span R^n")
        object.__setattr__(self, "tau", tau)
        mu = tuple(as_rational(v) for v in self.mu_shift) or (Fraction(0),) * self.n
        if len(mu) != self.n or any(v not in (0, HALF) for v in mu):
            raise ValueError("mu_shift must be a length-n vector with entries in {0, 1/2}")
        object.__setattr__(self, "mu_shift", mu)
        if self.B is not None:
            b = np.array(self.B, dtype=complex)
            dim = 2 ** (self.n // 2)
            if b.shape != (dim, dim):
                raise DimensionMismatch(f"B must be {dim}x{dim}, got {b.shape}")
            if not np.allclose(b, b.conj().T, atol=1e-12):
                raise ValueError("B must be self-adjoint")
            b.setflags(write=False)
            object.__setattr__(self, "B", b)

    @classmethod
    def standard(cls, n: int) -> "DiracData":
        return cls(n, RatMatrix.identity(n))

    def same_operator(self, other: "DiracData") -> bool:
        """Equality of frame, spin shift and bounded part."""
        if self.tau != other.tau or self.mu_shift != other.mu_shift:
            return False
        if self.B is None or other.B is None:
            return self.B is None and other.B is None
        return bool(np.array_equal(self.B, other.B))


def transform_nu(d: DiracData, N=None) -> DiracData:
    """The Dirac operator does not change under theta -> theta + N."""
    return d


def transform_rho(d: DiracData, R) -> DiracData:
    """``tau_i -> R^{-1} tau_i``."""
    r = R if isinstance(R, RatMatrix) else RatMatrix(R)
    check_unimodular(r)
    if r.shape[0] != d.n:
        raise DimensionMismatch(f"R is {r.shape}, Dirac data has n={d.n}")
    return replace(d, tau=rat_inverse(r) @ d.tau)


def sigma2_frame(theta: SkewMatrix) -> RatMatrix:
    """``F = [[-theta11^{-1}, 0], [theta12^t theta11^{-1}, I_q]]``."""
    if theta.n < 2 or theta[0, 1] == 0:
        raise Theta11Singular("theta_11 must be invertible")
    inv = rat_inverse(theta.theta11)
    q = theta.n - 2
    if q == 0:
        return -inv
    return RatMatrix.block(
        [
            [-inv, RatMatrix.zeros(2, q)],
            [theta.theta12.T @ inv, RatMatrix.identity(q)],
        ]
    )


def sigma2_frame_blockwise(theta: SkewMatrix, tau: RatMatrix) -> RatMatrix:
    """The same transform written through the inverse-transpose matrix.

    ``G = [[theta11^{-1}, -theta11^{-1} theta12], [0, I_q]]`` and the new
    frame is ``G^t tau``.  Kept separate as a cross-check of
    :func:`sigma2_frame`.
    """
    if theta.n < 2 or theta[0, 1] == 0:
        raise Theta11Singular("theta_11 must be invertible")
    inv = rat_inverse(theta.theta11)
    q = theta.n - 2
    if q == 0:
        g = inv
    else:
        g = RatMatrix.block(
            [[inv, -(inv @ theta.theta12)], [RatMatrix.zeros(q, 2), RatMatrix.identity(q)]]
        )
    return g.T @ tau


def transform_sigma2(d: DiracData, theta: SkewMatrix) -> DiracData:
    """New frame ``F tau``; the bounded part is dropped and the spin shift flagged."""
    if theta.n != d.n:
        raise DimensionMismatch(f"theta for n={theta.n}, Dirac data for n={d.n}")
    return replace(d, tau=sigma2_frame(theta) @ d.tau, B=None, mu_shift_unverified=True)


def transform_word(
    d: DiracData, theta: SkewMatrix, word: Iterable[Token]
) -> tuple[DiracData, SkewMatrix]:
    """Fold the word left to right, moving ``(d, theta)`` together."""
    for step, token in enumerate(word):
        try:
            if isinstance(token, Nu):
                d = transform_nu(d, token.N)
            elif isinstance(token, Rho):
                d = transform_rho(d, token.R)
            elif isinstance(token, Sigma2):
                d = transform_sigma2(d, theta)
            else:
                raise TypeError(f"not a generator token: {token!r}")
            theta = act_on_theta(token.element(theta.n), theta)
        except Theta11Singular as exc:
            raise Theta11Singular(f"step {step}: {exc}") from exc
        except ActionUndefined as exc:
            raise ActionUndefined(str(exc), step=step) from exc
    return d, theta


def involution_check(d: DiracData, theta: SkewMatrix) -> dict:
    """Apply sigma2 at theta, then at sigma2(theta); report whether tau returns."""
    theta2 = sigma2_block(theta)
    once = transform_sigma2(d, theta)
    twice = transform_sigma2(once, theta2)
    return {
        "theta_prime": theta2,
        "tau_prime": once.tau,
        "tau_restored": twice.tau,
        "pass": twice.tau == d.tau,
    }


def frame_prediction(theta: SkewMatrix, x: Sequence[int]) -> tuple[Fraction, ...]:
    """``theta11^{-1} (I_2, -theta12) x``, the commutator of a connection with ``U_x``."""
    if theta.n < 2 or theta[0, 1] == 0:
        raise Theta11Singular("theta_11 must be invertible")
    inv = rat_inverse(theta.theta11)
    q = theta.n - 2
    left = RatMatrix.block([[RatMatrix.identity(2), -theta.theta12]]) if q else RatMatrix.identity(2)
    return (inv @ left).apply(list(x))
