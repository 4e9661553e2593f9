"""Exact arithmetic in cyclotomic fields.

An element is a finite rational combination of roots of unity
``sum_r c_r e(r)``.  Such sums are not unique (``1 + e(1/2) = 0``), so every
element is kept in a normal form: writing ``M`` for the lcm of the root
orders, each root ``e(j/M)`` is split by the Chinese remainder theorem into
prime-power parts and rewritten in the basis

* ``zeta^j`` with ``0 <= j < 2^(k-1)`` for the 2-part of order ``2^k``
  (using ``zeta^(j + 2^(k-1)) = -zeta^j``);
* ``zeta^j`` whose top base-``p`` digit is nonzero for an odd part of
  order ``p^k`` (using ``sum_b zeta^(j + b p^(k-1)) = 0``).

The tensor product of these bases is a basis of Q(zeta_M), and restricting
to a divisor of ``M`` keeps basis roots basis roots, so two elements are
equal exactly when the normal form of their difference is empty.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from .exact import Phase, as_rational


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _factor(m: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


@lru_cache(maxsize=65536)
def _expand_root(j: int, m: int) -> tuple[tuple[Fraction, int], ...]:
    """Rewrite ``e(j/m)`` in the normal-form basis of Q(zeta_m)."""
    if m == 1:
        return ((Fraction(0), 1),)
    parts = []
    for p, k in _factor(m):
        pk = p**k
        cof = m // pk
        jp = (j * pow(cof, -1, pk)) % pk
        top = pk // p
        if p == 2:
            parts.append([(jp, 1)] if jp < top else [(jp - top, -1)])
        elif jp // top != 0:
            parts.append([(jp, 1)])
        else:
            parts.append([(jp + b * top, -1) for b in range(1, p)])
    factors = [pk for pk in (p**k for p, k in _factor(m))]
    out = []
    for combo in product(*parts):
        r = Fraction(0)
        sign = 1
        for (jp, s), pk in zip(combo, factors):
            r += Fraction(jp, pk)
            sign *= s
        out.append((r - (r.numerator // r.denominator), sign))
    return tuple(out)


def _normalize(terms: dict[Fraction, Fraction]) -> dict[Fraction, Fraction]:
    m = 1
    for r in terms:
        m = _lcm(m, r.denominator)
    out: dict[Fraction, Fraction] = {}
    for r, c in terms.items():
        if not c:
            continue
        for root, sign in _expand_root(r.numerator * (m // r.denominator), m):
            out[root] = out.get(root, 0) + sign * c
    return {r: c for r, c in out.items() if c}


class Cyclotomic:
    """An exact element of the maximal cyclotomic extension of Q."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None, *, _normal: bool = False):
        terms = terms or {}
        if not _normal:
            raw = {}
            for r, c in terms.items():
                r = Phase(r).exponent
                raw[r] = raw.get(r, 0) + as_rational(c)
            terms = _normalize(raw)
        self._terms = terms

    @classmethod
    def rational(cls, c) -> "Cyclotomic":
        return cls({Fraction(0): as_rational(c)})

    @classmethod
    def gaussian(cls, re, im=0) -> "Cyclotomic":
        """``re + i im`` with rational parts."""
        return cls({Fraction(0): as_rational(re), Fraction(1, 4): as_rational(im)})

    @classmethod
    def phase(cls, p: Phase | Fraction | int, coefficient=1) -> "Cyclotomic":
        r = p.exponent if isinstance(p, Phase) else Phase(p).exponent
        return cls({r: as_rational(coefficient)})

    @property
    def terms(self) -> dict[Fraction, Fraction]:
        """Normal-form map ``root exponent -> rational coefficient``."""
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> "Cyclotomic":
        other = as_cyclotomic(other)
        merged = dict(self._terms)
        for r, c in other._terms.items():
            merged[r] = merged.get(r, 0) + c
        return Cyclotomic(_normalize(merged), _normal=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic({r: -c for r, c in self._terms.items()}, _normal=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-as_cyclotomic(other))

    def __rsub__(self, other) -> "Cyclotomic":
        return as_cyclotomic(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, Phase):
            return self.times_phase(other)
        other = as_cyclotomic(other)
        prod_terms: dict[Fraction, Fraction] = {}
        for r, c in self._terms.items():
            for s, d in other._terms.items():
                rs = r + s
                rs -= rs.numerator // rs.denominator
                prod_terms[rs] = prod_terms.get(rs, 0) + c * d
        return Cyclotomic(_normalize(prod_terms), _normal=True)

    __rmul__ = __mul__

    def times_phase(self, p: Phase) -> "Cyclotomic":
        if p.exponent == 0:
            return self
        shifted = {}
        for r, c in self._terms.items():
            rs = r + p.exponent
            rs -= rs.numerator // rs.denominator
            shifted[rs] = c
        return Cyclotomic(_normalize(shifted), _normal=True)

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic({-r: c for r, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        try:
            other = as_cyclotomic(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def as_phase(self) -> Phase | None:
        """The phase ``e(r)`` when the element is a single root of unity."""
        if len(self._terms) == 1:
            (r, c), = self._terms.items()
            if c == 1:
                return Phase(r)
            if c == -1:
                return Phase(r + Fraction(1, 2))
        return None

    def __complex__(self) -> complex:
        if not self._terms:
            return 0j
        r = np.array([float(k) for k in self._terms])
        c = np.array([float(v) for v in self._terms.values()])
        return complex(np.sum(c * np.exp(2j * np.pi * r)))

    def __repr__(self) -> str:
        if not self._terms:
            return "Cyclotomic(0)"
        body = " + ".join(f"{c}*e({r})" for r, c in sorted(self._terms.items()))
        return f"Cyclotomic({body})"


def as_cyclotomic(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, Phase):
        return Cyclotomic.phase(value)
    if isinstance(value, (int, Fraction, str)) and not isinstance(value, bool):
        return Cyclotomic.rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact cyclotomic number")


ZERO = Cyclotomic()
ONE = Cyclotomic.rational(1)
