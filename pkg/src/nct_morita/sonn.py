"""The group SO(n,n|Z) and its fractional-linear action on deformation matrices.

Group elements are 2n x 2n integer matrices preserving the split form
``sum_i x_i x_{n+i}``; in block form ``g = [[A, B], [C, D]]`` they act on a
skew matrix by ``g . theta = (A theta + B)(C theta + D)^{-1}``.

Three generator families are provided (``rho(R)``, ``nu(N)``, ``sigma2``)
together with :class:`GeneratorWord`, a sequence of generator tokens that
is folded left to right over theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    ActionUndefined,
    DimensionMismatch,
    DimensionTooSmall,
    NotSkew,
    NotUnimodular,
    SingularMatrix,
    Theta11Singular,
)
from .exact import RatMatrix, SkewMatrix, is_skew, rat_inverse


def split_gram(n: int) -> RatMatrix:
    """Gram matrix ``[[0, I], [I, 0]]`` of the split form (the factor 1/2 cancels)."""
    z, i = RatMatrix.zeros(n), RatMatrix.identity(n)
    return RatMatrix.block([[z, i], [i, z]])


def verify_membership(m: RatMatrix | Sequence[Sequence[int]]) -> bool:
    """True iff ``m`` is an integer matrix of determinant one preserving the split form."""
    if not isinstance(m, RatMatrix):
        try:
            m = RatMatrix(m)
        except Exception:
            return False
    rows, cols = m.shape
    if rows != cols or rows % 2 or rows == 0 or not m.is_integer():
        return False
    q = split_gram(rows // 2)
    return m.T @ q @ m == q and m.det() == 1


class SonnElement:
    """An element of SO(n,n|Z), stored as its 2n x 2n integer matrix."""

    __slots__ = ("matrix", "n")

    def __init__(self, matrix, *, check: bool = True):
        m = matrix if isinstance(matrix, RatMatrix) else RatMatrix(matrix)
        if m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise DimensionMismatch(f"SO(n,n) elements are 2n x 2n, got {m.shape}")
        if check and not verify_membership(m):
            raise ValueError("matrix is not in SO(n,n|Z)")
        self.matrix = m
        self.n = m.shape[0] // 2

    @classmethod
    def identity(cls, n: int) -> "SonnElement":
        return cls(RatMatrix.identity(2 * n), check=False)

    @property
    def A(self) -> RatMatrix:
        return self.matrix.sub(0, self.n, 0, self.n)

    @property
    def B(self) -> RatMatrix:
        return self.matrix.sub(0, self.n, self.n, 2 * self.n)

    @property
    def C(self) -> RatMatrix:
        return self.matrix.sub(self.n, 2 * self.n, 0, self.n)

    @property
    def D(self) -> RatMatrix:
        return self.matrix.sub(self.n, 2 * self.n, self.n, 2 * self.n)

    def __matmul__(self, other: "SonnElement") -> "SonnElement":
        return compose(self, other)

    def to_int_rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.matrix.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, SonnElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"SonnElement(n={self.n}, {self.to_int_rows()})"


def check_unimodular(r: RatMatrix) -> None:
    if not r.is_square() or not r.is_integer():
        raise NotUnimodular("R must be a square integer matrix")
    if r.det() not in (1, -1):
        raise NotUnimodular(f"det(R) = {r.det()}, expected +-1")


def make_rho(R) -> SonnElement:
    """``rho(R) = diag(R, (R^t)^{-1})`` for R in GL(n, Z)."""
    r = R if isinstance(R, RatMatrix) else RatMatrix(R)
    check_unimodular(r)
    n = r.shape[0]
    z = RatMatrix.zeros(n)
    return SonnElement(RatMatrix.block([[r, z], [z, rat_inverse(r.T)]]), check=False)


def make_nu(N) -> SonnElement:
    """``nu(N) = [[I, N], [0, I]]`` for an integer skew N."""
    nm = N if isinstance(N, RatMatrix) else RatMatrix(N)
    if not nm.is_square() or not nm.is_integer() or not is_skew(nm):
        raise NotSkew("N must be an integer skew-symmetric matrix")
    n = nm.shape[0]
    i, z = RatMatrix.identity(n), RatMatrix.zeros(n)
    return SonnElement(RatMatrix.block([[i, nm], [z, i]]), check=False)


def make_sigma2(n: int) -> SonnElement:
    """The permutation swapping coordinates (1, n+1) and (2, n+2)."""
    if n < 2:
        raise DimensionTooSmall("sigma2 needs n >= 2")
    perm = list(range(2 * n))
    perm[0], perm[n] = n, 0
    perm[1], perm[n + 1] = n + 1, 1
    return SonnElement(
        RatMatrix([[int(perm[i] == j) for j in range(2 * n)] for i in range(2 * n)]), check=False
    )


def compose(g: SonnElement, h: SonnElement) -> SonnElement:
    if g.n != h.n:
        raise DimensionMismatch(f"cannot compose n={g.n} with n={h.n}")
    return SonnElement(g.matrix @ h.matrix, check=False)


def act_on_theta(g: SonnElement, theta: SkewMatrix) -> SkewMatrix:
    """``(A theta + B)(C theta + D)^{-1}``, exactly.

    Raises ActionUndefined when ``C theta + D`` is singular.
    """
    if g.n != theta.n:
        raise DimensionMismatch(f"element for n={g.n} acting on n={theta.n}")
    try:
        denom = rat_inverse(g.C @ theta + g.D)
    except SingularMatrix:
        raise ActionUndefined("C theta + D is singular") from None
    return SkewMatrix(((g.A @ theta + g.B) @ denom).rows)


def sigma2_block(theta: SkewMatrix) -> SkewMatrix:
    """sigma2(theta) from the 2 + q block decomposition.

    Independent of :func:`act_on_theta`; the two must agree.
    """
    if theta.n < 2:
        raise DimensionTooSmall("sigma2 needs n >= 2")
    t11, t12, t21, t22 = theta.theta11, theta.theta12, theta.theta21, theta.theta22
    if t11[0, 1] == 0:
        raise Theta11Singular("theta_11 = 0")
    inv = rat_inverse(t11)
    if theta.n == 2:
        return SkewMatrix(inv.rows)
    return SkewMatrix(
        RatMatrix.block([[inv, -(inv @ t12)], [t21 @ inv, t22 - t21 @ inv @ t12]]).rows
    )


# -- generator words -----------------------------------------------------

@dataclass(frozen=True)
class Rho:
    R: RatMatrix

    def __post_init__(self):
        r = self.R if isinstance(self.R, RatMatrix) else RatMatrix(self.R)
        check_unimodular(r)
        object.__setattr__(self, "R", r)

    def element(self, n: int) -> SonnElement:
        if self.R.shape[0] != n:
            raise DimensionMismatch(f"rho payload is {self.R.shape}, expected n={n}")
        return make_rho(self.R)


@dataclass(frozen=True)
class Nu:
    N: RatMatrix

    def __post_init__(self):
        nm = self.N if isinstance(self.N, RatMatrix) else RatMatrix(self.N)
        if not nm.is_square() or not nm.is_integer() or not is_skew(nm):
            raise NotSkew("nu payload must be integer skew-symmetric")
        object.__setattr__(self, "N", nm)

    def element(self, n: int) -> SonnElement:
        if self.N.shape[0] != n:
            raise DimensionMismatch(f"nu payload is {self.N.shape}, expected n={n}")
        return make_nu(self.N)


@dataclass(frozen=True)
class Sigma2:
    def element(self, n: int) -> SonnElement:
        return make_sigma2(n)


Token = Union[Rho, Nu, Sigma2]
SIGMA2 = Sigma2()


@dataclass(frozen=True)
class GeneratorWord:
    """An ordered list of generators, applied to theta left to right."""

    tokens: tuple = ()

    def __init__(self, tokens: Iterable[Token] = ()):
        toks = tuple(tokens)
        for t in toks:
            if not isinstance(t, (Rho, Nu, Sigma2)):
                raise TypeError(f"not a generator token: {t!r}")
        object.__setattr__(self, "tokens", toks)

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def element(self, n: int) -> SonnElement:
        """The group element acting like the word.

        Applying ``t1`` then ``t2`` ... then ``tk`` is the product
        ``tk ... t2 t1``.
        """
        g = SonnElement.identity(n)
        for t in self.tokens:
            g = compose(t.element(n), g)
        return g


def word_act(word: Iterable[Token], theta: SkewMatrix) -> SkewMatrix:
    """Fold :func:`act_on_theta` over the word; failures carry the step index."""
    for step, token in enumerate(word):
        try:
            theta = act_on_theta(token.element(theta.n), theta)
        except ActionUndefined as exc:
            raise ActionUndefined("C theta + D is singular", step=step) from exc
    return theta


def inverse_token(token: Token) -> Token:
    if isinstance(token, Rho):
        return Rho(rat_inverse(token.R))
    if isinstance(token, Nu):
        return Nu(-token.N)
    return token

