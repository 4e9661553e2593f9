"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction` (arbitrary precision, always
reduced).  :class:`RatMatrix` is a small immutable dense matrix over the
rationals; it only needs to be fast enough for n <= 8 block manipulations,
so it is a tuple of tuples rather than an object-dtype numpy array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import numpy as np

from .errors import NonSquare, NotRational, NotSkew, SingularMatrix, DimensionMismatch

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: the whole point of this layer is that no binary
    rounding ever enters a deformation matrix.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise NotRational(f"booleans are not rationals: {value!r}")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise NotRational(f"cannot parse {value!r} as a rational") from exc
    raise NotRational(f"{type(value).__name__} {value!r} is not an exact rational")


def rational_str(r: Fraction) -> str:
    """Serialise as ``"p/q"`` (``"p"`` when the denominator is one)."""
    return str(r)


def _integer_rows(rows) -> tuple[int, list[list[int]]]:
    den = 1
    for r in rows:
        for v in r:
            den = math.lcm(den, v.denominator)
    return den, [[v.numerator * (den // v.denominator) for v in r] for r in rows]


class RatMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "_shape")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_rational(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self._rows = data
        self._shape = (len(data), ncols)

    # -- construction -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["RatMatrix"]]) -> "RatMatrix":
        rows = []
        for brow in blocks:
            height = brow[0].shape[0]
            if any(b.shape[0] != height for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(height):
                rows.append([v for b in brow for v in b._rows[i]])
        return cls(rows)

    @classmethod
    def column(cls, values: Sequence) -> "RatMatrix":
        return cls([[v] for v in values])

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def sub(self, r0: int, r1: int, c0: int, c1: int) -> "RatMatrix":
        """Submatrix of rows ``r0:r1`` and columns ``c0:c1``."""
        return RatMatrix([row[c0:c1] for row in self._rows[r0:r1]])

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._rows)

    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    def is_integer(self) -> bool:
        return all(v.denominator == 1 for row in self._rows for v in row)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self._rows])

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * a for a in r] for r in self._rows])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self._shape[1] != other._shape[0]:
            raise DimensionMismatch(f"cannot multiply {self._shape} by {other._shape}")
        # integer arithmetic over a common denominator, one reduction per entry
        da, a = _integer_rows(self._rows)
        db, b = _integer_rows(other._rows)
        cols = list(zip(*b)) if b else []
        den = da * db
        return RatMatrix(
            [[Fraction(sum(x * y for x, y in zip(r, c) if x), den) for c in cols] for r in a]
        )

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product with a plain sequence."""
        if len(vec) != self._shape[1]:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self._shape} matrix")
        v = [as_rational(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self._rows)

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix(zip(*self._rows)) if self._rows else RatMatrix([])

    def det(self) -> Fraction:
        if not self.is_square():
            raise NonSquare(f"determinant of {self._shape} matrix")
        a = [list(r) for r in self._rows]
        n = len(a)
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return det

    def inverse(self) -> "RatMatrix":
        return rat_inverse(self)

    # -- misc ---------------------------------------------------------
    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array([[float(v) for v in r] for r in self._rows], dtype=dtype).reshape(self._shape)

    def to_strings(self) -> list[list[str]]:
        return [[rational_str(v) for v in r] for r in self._rows]

    def _check_same(self, other):
        if self._shape != other._shape:
            raise DimensionMismatch(f"shapes {self._shape} and {other._shape} differ")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_strings()})"


def rat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination.

    Raises SingularMatrix when the determinant vanishes.
    """
    if not m.is_square():
        raise NonSquare(f"inverse of {m.shape} matrix")
    n = m.shape[0]
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RatMatrix([r[n:] for r in a])


def rat_solve(m: RatMatrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``m @ x = rhs`` exactly for a possibly non-square ``m``.

    Returns one solution, or ``None`` when the system is inconsistent.
    Free variables are set to zero.
    """
    rows, cols = m.shape
    a = [list(r) + [as_rational(b)] for r, b in zip(m.rows, rhs)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(a[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = a[i][cols]
    return tuple(x)


def is_skew(m: RatMatrix) -> bool:
    if not m.is_square():
        raise NonSquare(f"skewness of {m.shape} matrix")
    n = m.shape[0]
    return all(m[i, j] == -m[j, i] for i in range(n) for j in range(i, n))


class SkewMatrix(RatMatrix):
    """Rational skew-symmetric n x n deformation matrix."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_square():
            raise NonSquare(f"deformation matrix must be square, got {self.shape}")
        if not is_skew(self):
            raise NotSkew("deformation matrix is not skew-symmetric")

    @classmethod
    def from_upper(cls, n: int, upper: Sequence) -> "SkewMatrix":
        """Build from the strictly-upper entries listed row by row."""
        vals = iter(upper)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = as_rational(next(vals))
                rows[i][j], rows[j][i] = v, -v
        return cls(rows)

    @property
    def n(self) -> int:
        return self.shape[0]

    # Block views with respect to the 2 + (n - 2) split.
    @property
    def theta11(self) -> RatMatrix:
        return self.sub(0, 2, 0, 2)

    @property
    def theta12(self) -> RatMatrix:
        return self.sub(0, 2, 2, self.n)

    @property
    def theta21(self) -> RatMatrix:
        return self.sub(2, self.n, 0, 2)

    @property
    def theta22(self) -> RatMatrix:
        return self.sub(2, self.n, 2, self.n)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """The bilinear form ``x . theta y``."""
        return sum((as_rational(a) * b for a, b in zip(x, self.apply(y))), Fraction(0))


@dataclass(frozen=True)
class Phase:
    """The unit complex number ``e(exponent) = exp(2 pi i exponent)``.

    The exponent is kept as an exact rational reduced into [0, 1).
    """

    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        r = as_rational(self.exponent)
        object.__setattr__(self, "exponent", r - (r.numerator // r.denominator))

    def __mul__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.exponent + other.exponent)

    def __pow__(self, k: int) -> "Phase":
        return Phase(self.exponent * k)

    def inverse(self) -> "Phase":
        return Phase(-self.exponent)

    def conjugate(self) -> "Phase":
        return self.inverse()

    def __complex__(self) -> complex:
        return complex(np.exp(2j * np.pi * float(self.exponent)))

    def __repr__(self) -> str:
        return f"e({self.exponent})"


def phase_mul(p: Phase, q: Phase) -> Phase:
    return p * q
