"""The Heisenberg bimodule S(R x Z^q) between A_theta and A_sigma2(theta).

Everything is built from one family of time-frequency shifts.  For
``z = (z1, z2, u, v)`` in ``R x R x Z^q x R^q``

    pi(z) f(t, p) = e(z1 t + v . p) f(t - z2, p + u),

and ``pi(z) pi(z') = e(z^t J2 z') pi(z') pi(z)`` with
``J2 = [[Jo, 0, 0], [0, 0, I], [0, -I, 0]]``.  The right action of
``U_x`` is ``pi(T x)`` and the left action of ``U_x`` in the transformed
algebra is ``pi(S x)``, where the integer matrices ``T`` and ``S`` satisfy

    T^t J2 T = -theta,   S^t J2 S = sigma2(theta),   S^t J2 T = [[I_2, 0], [0, 0]].

The first identity makes ``x -> pi(T x)`` an anti-representation of
A_theta, the second makes ``x -> pi(S x)`` a representation of
A_sigma2(theta), and the third (integral) makes the two commute.

Functions are sampled on a periodic t-grid of N points covering
``[-L, L)`` and on the box ``{-P..P}^q``.  Translation in t and the
derivative ``(1/2 pi i) d/dt`` are Fourier multipliers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundaryViolation, DimensionTooSmall, Theta11Singular
from .exact import RatMatrix, SkewMatrix, rat_inverse
from .sonn import sigma2_block

JO = RatMatrix([[0, 1], [-1, 0]])
EDGE_TOL = 1e-12
FAMILIES = ("right_relation", "left_relation", "commutant", "connection", "curvature")


def j2_matrix(q: int) -> RatMatrix:
    z2q, zq, iq = RatMatrix.zeros(2, q), RatMatrix.zeros(q), RatMatrix.identity(q)
    if q == 0:
        return JO
    return RatMatrix.block(
        [
            [JO, z2q, z2q],
            [z2q.T, zq, iq],
            [z2q.T, -iq, zq],
        ]
    )


@dataclass(frozen=True)
class Embeddings:
    """Exact lattice data for the bimodule attached to ``theta``."""

    theta: SkewMatrix
    theta_prime: SkewMatrix
    T11: RatMatrix
    T32: RatMatrix
    T: RatMatrix
    S: RatMatrix
    J2: RatMatrix

    @property
    def n(self) -> int:
        return self.theta.n

    @property
    def q(self) -> int:
        return self.theta.n - 2

    def right_vector(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        return self.T.apply(list(x))

    def left_vector(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        return self.S.apply(list(x))

    def commutator_matrix(self) -> RatMatrix:
        """``G`` with ``[nabla_i, U_x^l] = (G x)_i U_x^l``."""
        inv = rat_inverse(self.theta.theta11)
        if self.q == 0:
            return inv
        return RatMatrix.block(
            [
                [inv, -(inv @ self.theta.theta12)],
                [RatMatrix.zeros(self.q, 2), RatMatrix.identity(self.q)],
            ]
        )


def _strict_upper(m: RatMatrix) -> RatMatrix:
    k = m.shape[0]
    return RatMatrix([[m[i, j] if j > i else 0 for j in range(k)] for i in range(k)])


def build_embeddings(theta: SkewMatrix) -> Embeddings:
    """Assemble T11, T32, T and S and check their identities exactly."""
    if theta.n < 2:
        raise DimensionTooSmall("the bimodule needs n >= 2")
    t12 = theta[0, 1]
    if t12 == 0:
        raise Theta11Singular("theta_11 = 0")
    q = theta.n - 2
    t11 = RatMatrix.diag([1, -t12])
    t11_inv_t = rat_inverse(t11.T)
    if q == 0:
        t32 = RatMatrix([])
        T = t11
        S = JO @ t11_inv_t
    else:
        t32 = -_strict_upper(theta.theta22)
        z2q, zq, iq = RatMatrix.zeros(2, q), RatMatrix.zeros(q), RatMatrix.identity(q)
        T = RatMatrix.block([[t11, z2q], [z2q.T, iq], [theta.theta12.T, t32]])
        top = JO @ t11_inv_t
        S = RatMatrix.block([[top, -(top @ theta.theta12)], [z2q.T, iq], [z2q.T, t32.T]])
    j2 = j2_matrix(q)
    theta_prime = sigma2_block(theta)

    if t11.T @ JO @ t11 != -theta.theta11:
        raise AssertionError("T11^t Jo T11 != -theta_11")
    if q and t32.T - t32 != theta.theta22:
        raise AssertionError("T32^t - T32 != theta_22")
    if T.T @ j2 @ T != -theta:
        raise AssertionError("T^t J2 T != -theta")
    if not (S.T @ j2 @ T).is_integer():
        raise AssertionError("S^t J2 T is not integral")
    if S.T @ j2 @ S != theta_prime:
        raise AssertionError("S^t J2 S != sigma2(theta)")
    return Embeddings(theta, theta_prime, t11, t32, T, S, j2)


# -- grids ---------------------------------------------------------------

@dataclass(frozen=True)
class GridSpec:
    N: int = 2048
    L: float = 16.0
    P: int = 8

    def __post_init__(self):
        if self.N < 8 or self.N & (self.N - 1):
            raise ValueError(f"N must be a power of two >= 8, got {self.N}")
        if self.L <= 0:
            raise ValueError("L must be positive")
        if self.P < 3:
            raise ValueError("P must be at least 3")

    @property
    def h(self) -> float:
        return 2 * self.L / self.N

    @property
    def t(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.N)

    @property
    def freqs(self) -> np.ndarray:
        return np.fft.fftfreq(self.N, d=self.h)

    @property
    def p_values(self) -> np.ndarray:
        return np.arange(-self.P, self.P + 1)


@dataclass(frozen=True)
class ModuleGrid:
    """Samples of a section: axis 0 is t, axes 1..q are the p coordinates."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape[0] != self.spec.N or any(s != 2 * self.spec.P + 1 for s in v.shape[1:]):
            raise ValueError(f"values of shape {v.shape} do not match {self.spec}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def q(self) -> int:
        return self.values.ndim - 1

    def with_values(self, values: np.ndarray) -> "ModuleGrid":
        return ModuleGrid(self.spec, values)

    def __add__(self, other: "ModuleGrid") -> "ModuleGrid":
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "ModuleGrid") -> "ModuleGrid":
        return self.with_values(self.values - other.values)

    def scale(self, c: complex) -> "ModuleGrid":
        return self.with_values(c * self.values)

    def inner(self, other: "ModuleGrid") -> complex:
        """``<self, other>``, antilinear in the first slot."""
        return complex(np.vdot(self.values, other.values) * self.spec.h)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.spec.h))


def _t_axis(spec: GridSpec, q: int) -> np.ndarray:
    return spec.t.reshape((-1,) + (1,) * q)


def _p_axis(spec: GridSpec, q: int, k: int) -> np.ndarray:
    shape = [1] * (q + 1)
    shape[k + 1] = -1
    return spec.p_values.reshape(shape)


def gaussian(spec: GridSpec, q: int, a: float = 0.0, b: float = 0.0, p0: Sequence[int] = ()) -> ModuleGrid:
    """``exp(-pi (t - a)^2) e(b t)`` supported at the single lattice point p0."""
    p0 = tuple(p0) or (0,) * q
    if len(p0) != q:
        raise ValueError(f"p0 must have {q} entries")
    t = spec.t
    col = np.exp(-np.pi * (t - a) ** 2 + 2j * np.pi * b * t)
    vals = np.zeros((spec.N,) + (2 * spec.P + 1,) * q, dtype=complex)
    vals[(slice(None),) + tuple(p + spec.P for p in p0)] = col
    return ModuleGrid(spec, vals)


def _check_edges(values: np.ndarray, scale: float, what: str) -> None:
    edge = max(np.max(np.abs(values[0])), np.max(np.abs(values[-1])))
    if edge > EDGE_TOL * max(scale, 1e-300):
        raise BoundaryViolation(f"{what}: |f| = {edge:.3g} at the t-window edge")


def translate_t(g: ModuleGrid, a: float, strict: bool = True) -> ModuleGrid:
    """``f(t - a)`` by a Fourier phase."""
    if a == 0:
        return g
    phase = np.exp(-2j * np.pi * g.spec.freqs * a).reshape((-1,) + (1,) * g.q)
    out = np.fft.ifft(phase * np.fft.fft(g.values, axis=0), axis=0)
    if strict:
        _check_edges(out, np.max(np.abs(g.values)), "translation")
    return g.with_values(out)


def shift_p(g: ModuleGrid, u: Sequence[int], strict: bool = True) -> ModuleGrid:
    """``f(t, p + u)`` with zero fill outside the box."""
    vals = g.values
    P = g.spec.P
    out = np.zeros_like(vals)
    src, dst = [slice(None)], [slice(None)]
    for k in range(g.q):
        s = int(u[k])
        if abs(s) > 2 * P:
            src.append(slice(0, 0))
            dst.append(slice(0, 0))
            continue
        # out[p] = vals[p + s]
        src.append(slice(max(s, 0), 2 * P + 1 + min(s, 0)))
        dst.append(slice(max(-s, 0), 2 * P + 1 + min(-s, 0)))
    out[tuple(dst)] = vals[tuple(src)]
    if strict:
        dropped = np.ones(vals.shape, dtype=bool)
        dropped[tuple(src)] = False
        lost = np.sum(np.abs(vals[dropped]) ** 2)
        if lost > EDGE_TOL**2 * max(np.sum(np.abs(vals) ** 2), 1e-300):
            raise BoundaryViolation(f"p-shift by {tuple(u)} pushed mass out of the box")
    return g.with_values(out)


def time_frequency_shift(g: ModuleGrid, z: Sequence, strict: bool = True) -> ModuleGrid:
    """``pi(z) g`` for ``z = (z1, z2, u_1..u_q, v_1..v_q)``."""
    q = g.q
    z = [float(v) for v in z]
    z1, z2, u, v = z[0], z[1], z[2 : 2 + q], z[2 + q : 2 + 2 * q]
    if any(abs(x - round(x)) > 1e-12 for x in u):
        raise ValueError("p-shifts must be integers")
    out = shift_p(translate_t(g, z2, strict), [int(round(x)) for x in u], strict)
    phase = np.exp(2j * np.pi * z1 * _t_axis(g.spec, q))
    for k in range(q):
        if v[k]:
            phase = phase * np.exp(2j * np.pi * v[k] * _p_axis(g.spec, q, k))
    return out.with_values(phase * out.values)


def right_action(e: Embeddings, g: ModuleGrid, x: Sequence[int], strict: bool = True) -> ModuleGrid:
    """``g . U_x`` for ``U_x`` in A_theta."""
    return time_frequency_shift(g, e.right_vector(x), strict)


def left_action(e: Embeddings, g: ModuleGrid, x: Sequence[int], strict: bool = True) -> ModuleGrid:
    """``U_x . g`` for ``U_x`` in A_sigma2(theta)."""
    return time_frequency_shift(g, e.left_vector(x), strict)


# -- connections ---------------------------------------------------------

def spectral_d(g: ModuleGrid) -> ModuleGrid:
    """``(1 / 2 pi i) d/dt``, i.e. multiplication by the frequency."""
    xi = g.spec.freqs.copy()
    if g.spec.N % 2 == 0:
        xi[g.spec.N // 2] = 0.0
    xi = xi.reshape((-1,) + (1,) * g.q)
    return g.with_values(np.fft.ifft(xi * np.fft.fft(g.values, axis=0), axis=0))


def multiply_t(g: ModuleGrid) -> ModuleGrid:
    return g.with_values(_t_axis(g.spec, g.q) * g.values)


@dataclass(frozen=True)
class Connection:
    """``nabla_i``.

    For i = 1, 2 it is row i of ``T11^{-1} (D, t)`` with
    ``D = (1/2 pi i) d/dt``; for i >= 3 it is multiplication by
    ``-p_{i-2}``.  These signs give ``[nabla_i, g . U_x] = x_i g . U_x``
    for the right action above.
    """

    index: int
    embeddings: Embeddings

    def __post_init__(self):
        if not 1 <= self.index <= self.embeddings.n:
            raise ValueError(f"connection index {self.index} outside 1..{self.embeddings.n}")


def connection_apply(c: Connection, g: ModuleGrid) -> ModuleGrid:
    i = c.index
    if i <= 2:
        row = rat_inverse(c.embeddings.T11).rows[i - 1]
        out = np.zeros_like(g.values)
        if row[0]:
            out = out + float(row[0]) * spectral_d(g).values
        if row[1]:
            out = out + float(row[1]) * multiply_t(g).values
        return g.with_values(out)
    return g.with_values(-_p_axis(g.spec, g.q, i - 3) * g.values)


def curvature_estimate(e: Embeddings, g: ModuleGrid) -> float:
    """``2 pi i <g, [nabla_1, nabla_2] g> / <g, g>``; exact value ``(theta11^{-1})_12``."""
    n1, n2 = Connection(1, e), Connection(2, e)
    comm = connection_apply(n1, connection_apply(n2, g)) - connection_apply(n2, connection_apply(n1, g))
    val = 2j * np.pi * g.inner(comm) / g.inner(g)
    return float(val.real)


def hermitian_defect(c: Connection, r: ModuleGrid, s: ModuleGrid) -> float:
    """``|<r, nabla s> - <nabla r, s>| / (|r| |s|)``.

    The scalar part of ``[D, (r|s)]`` vanishes, so for a Hermitian
    connection this is zero up to discretisation.
    """
    lhs = r.inner(connection_apply(c, s)) - connection_apply(c, r).inner(s)
    return abs(lhs) / (r.norm() * s.norm())


def leibniz_defect(e: Embeddings, g: ModuleGrid, x: Sequence[int], strict: bool = True) -> float:
    """Largest ``|[nabla_i, R_x] g - x_i R_x g| / |g|`` over i."""
    rx = right_action(e, g, x, strict)
    worst = 0.0
    for i in range(1, e.n + 1):
        c = Connection(i, e)
        lhs = connection_apply(c, rx) - right_action(e, connection_apply(c, g), x, strict)
        worst = max(worst, _rel(lhs, rx.scale(x[i - 1]), g.norm()))
    return worst


# -- verification battery ------------------------------------------------

def gaussian_battery(spec: GridSpec, q: int) -> list[ModuleGrid]:
    out = []
    for a in (-1.0, 0.0, 1.0):
        for b in (0.0, 1 / 3):
            for p0 in itertools.product((-1, 0, 1), repeat=q):
                out.append(gaussian(spec, q, a, b, p0))
    return out


def x_battery(n: int, seed: int = 0, extra: int = 3) -> list[tuple[int, ...]]:
    """Unit vectors plus a seeded sample from ``{-2..2}^n``."""
    rng = np.random.default_rng(seed)
    vecs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    while len(vecs) < n + extra:
        x = tuple(int(v) for v in rng.integers(-2, 3, size=n))
        if any(x) and x not in vecs:
            vecs.append(x)
    return vecs


@dataclass
class ModuleReport:
    n: int
    grid: GridSpec
    tol: float
    theta: SkewMatrix | None = None
    theta_prime: SkewMatrix | None = None
    error: str | None = None
    residuals: dict = field(default_factory=dict)
    hermitian: float | None = None
    curvature_estimate: float | None = None
    curvature_expected: Fraction | None = None
    predictions: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)
    passed: bool = False


def _rel(a: ModuleGrid, b: ModuleGrid, ref: float) -> float:
    return (a - b).norm() / ref


def _paired_phase(theta: SkewMatrix, x, y) -> complex:
    return complex(np.exp(2j * np.pi * float(theta.pairing(x, y))))


def _residual_families(e: Embeddings, spec: GridSpec, xs, strict: bool):
    theta, theta_p = e.theta, e.theta_prime
    res = dict.fromkeys(FAMILIES, 0.0)
    battery = gaussian_battery(spec, e.q)
    expected = float(rat_inverse(theta.theta11)[0, 1])
    curv_worst = None
    G = e.commutator_matrix()
    conns = [Connection(i, e) for i in range(1, e.n + 1)]
    predictions = [(x, G.apply(list(x))) for x in xs]
    for g in battery:
        ref = g.norm()
        R = {x: right_action(e, g, x, strict) for x in xs}
        L = {x: left_action(e, g, x, strict) for x in xs}
        for x in xs:
            for y in xs:
                # right action is an anti-homomorphism: g.U_x.U_y = R_y R_x g
                ryx = right_action(e, R[x], y, strict)
                rxy = right_action(e, R[y], x, strict)
                res["right_relation"] = max(
                    res["right_relation"], _rel(ryx, rxy.scale(_paired_phase(theta, x, y)), ref)
                )
                lxy = left_action(e, L[y], x, strict)
                lyx = left_action(e, L[x], y, strict)
                res["left_relation"] = max(
                    res["left_relation"], _rel(lxy, lyx.scale(_paired_phase(theta_p, x, y)), ref)
                )
                mixed_a = right_action(e, L[x], y, strict)
                mixed_b = left_action(e, R[y], x, strict)
                res["commutant"] = max(res["commutant"], _rel(mixed_a, mixed_b, ref))
        for x, pred in predictions:
            for c in conns:
                lhs = connection_apply(c, L[x]) - left_action(e, connection_apply(c, g), x, strict)
                want = L[x].scale(float(pred[c.index - 1]))
                res["connection"] = max(res["connection"], _rel(lhs, want, ref))
        est = curvature_estimate(e, g)
        res["curvature"] = max(res["curvature"], abs(est - expected))
        if curv_worst is None or abs(est - expected) >= abs(curv_worst - expected):
            curv_worst = est
    herm = 0.0
    for r, s in zip(battery, battery[1:] + battery[:1]):
        for c in conns:
            herm = max(herm, hermitian_defect(c, r, s))
    return res, predictions, curv_worst, herm


def _alt_convention_defects(e: Embeddings, spec: GridSpec, xs) -> dict:
    """Defects of the mirrored convention, diagnostics only.

    The mirrored right action translates by ``t + (T11 x)_2``; the
    mirrored left action takes its t-phase from the second component of
    ``Jo T11^{-t} (I_2, -theta12) x``, translates by ``t + `` the first, and
    uses ``T32 x_q`` in the p-phase.  Large values here show that those sign
    choices break the bimodule relations.
    """
    q = e.q
    top = JO @ rat_inverse(e.T11.T)
    head = top if q == 0 else top @ RatMatrix.block([[RatMatrix.identity(2), -e.theta.theta12]])

    def alt_right(g, x):
        z = e.right_vector(x)
        return time_frequency_shift(g, (z[0], -z[1], *z[2:]), strict=False)

    def alt_left(g, x):
        w = head.apply(list(x))
        v = e.T32.apply(list(x[2:])) if q else ()
        return time_frequency_shift(g, (w[1], -w[0], *x[2:], *v), strict=False)

    g = gaussian(spec, q)
    ref = g.norm()
    out = dict.fromkeys(("alt_right_relation", "alt_left_relation", "alt_commutant"), 0.0)
    for x in xs:
        for y in xs:
            a = alt_right(alt_right(g, x), y)
            b = alt_right(alt_right(g, y), x).scale(_paired_phase(e.theta, x, y))
            out["alt_right_relation"] = max(out["alt_right_relation"], _rel(a, b, ref))
            a = alt_left(alt_left(g, y), x)
            b = alt_left(alt_left(g, x), y).scale(_paired_phase(e.theta_prime, x, y))
            out["alt_left_relation"] = max(out["alt_left_relation"], _rel(a, b, ref))
            a = alt_right(alt_left(g, x), y)
            b = alt_left(alt_right(g, y), x)
            out["alt_commutant"] = max(out["alt_commutant"], _rel(a, b, ref))
    return out


def verify_module(
    theta: SkewMatrix,
    grid: GridSpec | None = None,
    tol: float = 1e-6,
    seed: int = 0,
    strict: bool = True,
    diagnostics: bool = False,
    xs: Iterable[Sequence[int]] | None = None,
) -> ModuleReport:
    """Run every bimodule identity on the Gaussian battery.

    Families: (a) right-action relations at theta, (b) left-action
    relations at sigma2(theta), (c) commutant, (d) connection commutator
    against ``theta11^{-1} (I_2, -theta12) x``, the curvature scalar and a
    Hermitian spot check.  Failures land in the report, not in exceptions.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    grid = grid or GridSpec()
    report = ModuleReport(n=theta.n, grid=grid, tol=tol, theta=theta)
    try:
        e = build_embeddings(theta)
    except (Theta11Singular, DimensionTooSmall) as exc:
        report.error = f"{type(exc).__name__}: {exc}"
        return report
    report.theta_prime = e.theta_prime
    xs = [tuple(x) for x in xs] if xs is not None else x_battery(theta.n, seed)
    try:
        res, preds, curv, herm = _residual_families(e, grid, xs, strict)
    except BoundaryViolation as exc:
        report.error = f"BoundaryViolation: {exc}"
        return report
    report.residuals = res
    report.hermitian = herm
    report.predictions = preds
    report.curvature_estimate = curv
    report.curvature_expected = rat_inverse(theta.theta11)[0, 1]
    if diagnostics:
        report.diagnostics = _alt_convention_defects(e, grid, xs)
    report.passed = herm < 10 * tol and all(v < tol for v in res.values())
    return report
