"""Symbolic smooth noncommutative torus A_theta for rational theta.

Elements are finite sums of normal-ordered monomials
``M(x) = U_1^{x_1} ... U_n^{x_n}`` with exact cyclotomic coefficients.
From ``U_j U_i = e(theta_ji) U_i U_j`` one gets the product rule

    M(x) M(y) = e(sum_{j > i} x_j y_i theta_ji) M(x + y),

which is all the multiplication needs.  ``U_x`` in the commutation relation
``U_x U_y = e(x . theta y) U_y U_x`` is identified with ``M(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .cyclotomic import ONE, Cyclotomic, as_cyclotomic
from .errors import CutoffTooSmall, DimensionMismatch, IndexOutOfRange, ThetaMismatch
from .exact import Phase, SkewMatrix

Exponent = tuple[int, ...]


def cocycle(theta: SkewMatrix, x: Sequence[int], y: Sequence[int]) -> Fraction:
    """Exponent of the phase picked up when normal-ordering ``M(x) M(y)``."""
    n = theta.n
    total = Fraction(0)
    for i in range(n):
        if not y[i]:
            continue
        for j in range(i + 1, n):
            if x[j]:
                total += x[j] * y[i] * theta[j, i]
    return total


class Monomial(NamedTuple):
    x: Exponent
    coefficient: Cyclotomic


class TorusElement:
    """A finite linear combination of normal-ordered monomials."""

    __slots__ = ("theta", "_terms")

    def __init__(self, theta: SkewMatrix, terms: dict | None = None):
        self.theta = theta
        clean: dict[Exponent, Cyclotomic] = {}
        for x, c in (terms or {}).items():
            x = tuple(int(v) for v in x)
            if len(x) != theta.n:
                raise DimensionMismatch(f"exponent {x} for n={theta.n}")
            c = as_cyclotomic(c)
            acc = clean.get(x)
            c = c if acc is None else acc + c
            if c.is_zero():
                clean.pop(x, None)
            else:
                clean[x] = c
        self._terms = clean

    @classmethod
    def one(cls, theta: SkewMatrix) -> "TorusElement":
        return cls(theta, {(0,) * theta.n: ONE})

    @classmethod
    def zero(cls, theta: SkewMatrix) -> "TorusElement":
        return cls(theta)

    @classmethod
    def monomial(cls, theta: SkewMatrix, x: Sequence[int], coefficient=1) -> "TorusElement":
        return cls(theta, {tuple(x): coefficient})

    @classmethod
    def generator(cls, theta: SkewMatrix, i: int) -> "TorusElement":
        """``U_i`` for 1-based index i."""
        x = [0] * theta.n
        x[i - 1] = 1
        return cls.monomial(theta, x)

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def terms(self) -> dict[Exponent, Cyclotomic]:
        return dict(self._terms)

    def monomials(self) -> Iterator[Monomial]:
        for x in sorted(self._terms):
            yield Monomial(x, self._terms[x])

    def is_zero(self) -> bool:
        return not self._terms

    def _same_algebra(self, other: "TorusElement") -> None:
        if self.theta != other.theta:
            raise ThetaMismatch("elements live in different torus algebras")

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._same_algebra(other)
        merged = dict(self._terms)
        for x, c in other._terms.items():
            merged[x] = merged[x] + c if x in merged else c
        return TorusElement(self.theta, merged)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.theta, {x: -c for x, c in self._terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c) -> "TorusElement":
        c = as_cyclotomic(c)
        return TorusElement(self.theta, {x: c * v for x, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def star(self) -> "TorusElement":
        return star(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.theta == other.theta and (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return "TorusElement(0)"
        return "TorusElement(" + " + ".join(f"{c!r}*M{x}" for x, c in self.monomials()) + ")"


def mul(a: TorusElement, b: TorusElement) -> TorusElement:
    a._same_algebra(b)
    theta = a.theta
    out: dict[Exponent, Cyclotomic] = {}
    for x, c in a._terms.items():
        for y, d in b._terms.items():
            z = tuple(p + q for p, q in zip(x, y))
            term = (c * d).times_phase(Phase(cocycle(theta, x, y)))
            out[z] = out[z] + term if z in out else term
    return TorusElement(theta, out)


def star(a: TorusElement) -> TorusElement:
    """Antilinear involution; ``M(x)^* = e(sum_{j>i} x_j x_i theta_ji) M(-x)``."""
    theta = a.theta
    out = {}
    for x, c in a._terms.items():
        out[tuple(-v for v in x)] = c.conjugate().times_phase(Phase(cocycle(theta, x, x)))
    return TorusElement(theta, out)


def delta(j: int, a: TorusElement) -> TorusElement:
    """The derivation with ``delta_j M(x) = x_j M(x)`` (1-based j)."""
    if not 1 <= j <= a.n:
        raise IndexOutOfRange(f"derivation index {j} outside 1..{a.n}")
    return TorusElement(a.theta, {x: c * x[j - 1] for x, c in a._terms.items()})


@dataclass(frozen=True)
class OneForm:
    """``sum_i b_i A_i`` with coefficients in A_theta, one per Clifford generator."""

    components: tuple[TorusElement, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if comps:
            theta = comps[0].theta
            if len(comps) != theta.n:
                raise DimensionMismatch(f"{len(comps)} components for n={theta.n}")
            for c in comps:
                if c.theta != theta:
                    raise ThetaMismatch("one-form components in different algebras")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(tuple(a - b for a, b in zip(self.components, other.components)))

    def lmul(self, a: TorusElement) -> "OneForm":
        return OneForm(tuple(mul(a, c) for c in self.components))

    def rmul(self, a: TorusElement) -> "OneForm":
        return OneForm(tuple(mul(c, a) for c in self.components))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneForm):
            return NotImplemented
        return len(self.components) == len(other.components) and (self - other).is_zero()

    __hash__ = None


def dirac_commutator(d, a: TorusElement) -> OneForm:
    """``[D, a]`` as a one-form: component j is ``sum_x (tau_j . x) c_x M(x)``.

    The bounded part B of ``d`` commutes with the algebra and drops out.
    """
    if d.n != a.n:
        raise DimensionMismatch(f"Dirac data for n={d.n}, element for n={a.n}")
    comps = []
    for j in range(d.n):
        tau_j = d.tau.col(j)
        comps.append(
            TorusElement(
                a.theta,
                {x: c * sum((t * v for t, v in zip(tau_j, x)), Fraction(0)) for x, c in a._terms.items()},
            )
        )
    return OneForm(tuple(comps))


@dataclass(frozen=True)
class RealSign:
    n: int
    value: int


def epsilon_j(n: int) -> RealSign:
    """Sign in the inner fluctuation: -1 iff n = 1 mod 4."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return RealSign(n, -1 if n % 4 == 1 else 1)


@dataclass(frozen=True)
class CircleReport:
    cutoff: int
    epsilon: int
    residual: float
    interior: int
    self_adjoint: bool


def _circle_ops(c: TorusElement, cutoff: int):
    mu = np.arange(-cutoff, cutoff + 1)
    size = mu.size
    D = np.diag(mu.astype(complex))
    C = np.zeros((size, size), dtype=complex)
    for (k,), coef in c.terms.items():
        val = complex(coef)
        for col in range(size):
            row = col + k
            if 0 <= row < size:
                C[row, col] += val
    flip = np.eye(size)[::-1]
    return mu, D, C, flip


def fluctuate_dim1(c: TorusElement, cutoff: int) -> CircleReport:
    """Inner fluctuation ``D + c + eps_J J c J^dagger`` on the circle.

    ``c`` is a gauge potential on the commutative circle (n = 1, theta = 0),
    acting on the basis ``e_mu, |mu| <= cutoff`` by ``e_mu -> e_{mu+k}``.
    ``J`` is complex conjugation composed with ``e_mu -> e_{-mu}``; as a
    linear map ``J C J^dagger = F conj(C) F^t`` with F the flip.  The
    residual is the largest entry of ``D' - D`` on ``|mu| <= cutoff/2``.
    """
    if c.n != 1 or c.theta[0, 0] != 0:
        raise DimensionMismatch("circle example needs the one-dimensional commutative torus")
    if cutoff < 4:
        raise CutoffTooSmall(f"cutoff {cutoff} < 4")
    mu, D, C, F = _circle_ops(c, cutoff)
    eps = epsilon_j(1).value
    d_prime = D + C + eps * (F @ C.conj() @ F.T)
    inner = np.abs(mu) <= cutoff // 2
    block = (d_prime - D)[np.ix_(inner, inner)]
    return CircleReport(
        cutoff=cutoff,
        epsilon=eps,
        residual=float(np.max(np.abs(block))) if block.size else 0.0,
        interior=int(inner.sum()),
        self_adjoint=star(c) == c,
    )
