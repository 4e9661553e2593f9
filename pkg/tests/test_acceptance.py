"""Acceptance criteria, one function each.

Every ``criterion_*`` returns ``(ok, detail)``; the runtime bound is part
of ``ok``.  Results are collected in ``RESULTS`` and printed as one line
per criterion at the end of the pytest run (see conftest), or directly
with ``python tests/test_acceptance.py``.
"""

import io
import itertools
import json
import time
from fractions import Fraction

import numpy as np
import pytest

from nct_morita.cli import run
from nct_morita.clifford import clifford_generators, verify_clifford
from nct_morita.cyclotomic import Cyclotomic
from nct_morita.dirac import DiracData, transform_sigma2
from nct_morita.exact import Phase, RatMatrix, SkewMatrix
from nct_morita.finite_rep import clock_shift_rep, eval_element, max_entry
from nct_morita.heisenberg import FAMILIES, GridSpec, verify_module
from nct_morita.sonn import (
    SIGMA2,
    GeneratorWord,
    Nu,
    Rho,
    act_on_theta,
    make_nu,
    make_rho,
    make_sigma2,
    sigma2_block,
    verify_membership,
    word_act,
)
from nct_morita.torus import TorusElement, epsilon_j, mul

SEED = 20240
RESULTS: dict[int, tuple[bool, str]] = {}

MODULE_THETAS = [
    SkewMatrix.from_upper(2, ["1/2"]),
    SkewMatrix.from_upper(2, ["1/3"]),
    SkewMatrix.from_upper(3, ["1/2", "1/3", "-1/4"]),
    SkewMatrix.from_upper(3, ["1/3", "1/5", "2/7"]),
]


def _fraction(rng, max_den=9):
    return Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, max_den + 1)))


def theta_battery(count=200, seed=SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, 5))
        upper = [_fraction(rng) for _ in range(n * (n - 1) // 2)]
        while upper[0] == 0:
            upper[0] = _fraction(rng)
        out.append(SkewMatrix.from_upper(n, upper))
    return out


def random_frame(rng, n):
    while True:
        tau = RatMatrix([[_fraction(rng) for _ in range(n)] for _ in range(n)])
        if tau.det() != 0:
            return tau


def random_unimodular(rng, n):
    m = np.eye(n, dtype=int)
    for _ in range(4):
        i, j = rng.choice(n, size=2, replace=False)
        e = np.eye(n, dtype=int)
        e[i, j] = int(rng.integers(-2, 3))
        m = e @ m
    if rng.integers(2):
        m[0] = -m[0]
    return RatMatrix(m.tolist())


def random_integer_skew(rng, n):
    return RatMatrix(SkewMatrix.from_upper(n, [int(v) for v in rng.integers(-3, 4, size=n * (n - 1) // 2)]).rows)


def _timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


def criterion_1():
    """sigma2 o sigma2 = id on theta, exactly."""
    def body():
        bad = [th for th in theta_battery() if word_act([SIGMA2, SIGMA2], th) != th]
        return not bad, f"{200 - len(bad)}/200 restored"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_2():
    """Dirac frames return after sigma2 at theta then at sigma2(theta)."""
    def body():
        rng = np.random.default_rng(SEED + 2)
        bad = 0
        for th in theta_battery():
            tau = random_frame(rng, th.n)
            once = transform_sigma2(DiracData(th.n, tau), th)
            if transform_sigma2(once, sigma2_block(th)).tau != tau:
                bad += 1
        return not bad, f"{200 - bad}/200 frames restored"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_3():
    """Block formula equals the group action of the sigma2 matrix."""
    def body():
        bad = [th for th in theta_battery() if sigma2_block(th) != act_on_theta(make_sigma2(th.n), th)]
        return not bad, f"{200 - len(bad)}/200 agree"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_4():
    """Generators and random 6-letter words lie in SO(n,n|Z)."""
    def body():
        rng = np.random.default_rng(SEED + 4)
        checked = failed = 0
        for n in (2, 3, 4):
            gens = [make_sigma2(n), make_rho(random_unimodular(rng, n)), make_nu(random_integer_skew(rng, n))]
            for g in gens:
                checked += 1
                failed += not verify_membership(g.matrix)
            for _ in range(30):
                word = []
                for _ in range(6):
                    k = rng.integers(3)
                    word.append(SIGMA2 if k == 0 else Rho(random_unimodular(rng, n)) if k == 1 else Nu(random_integer_skew(rng, n)))
                checked += 1
                failed += not verify_membership(GeneratorWord(word).element(n).matrix)
        return not failed, f"{checked - failed}/{checked} members"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_5():
    """Clifford relations for n <= 8."""
    def body():
        anti = adj = 0.0
        for n in range(1, 9):
            r = verify_clifford(clifford_generators(n), 1e-12)
            anti, adj = max(anti, r.anticommutator_defect), max(adj, r.adjoint_defect)
        return anti < 1e-12 and adj < 1e-12, f"anticommutator {anti:.1e}, adjoint {adj:.1e}"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_6():
    """Symbolic products against clock-shift matrices, 500 products."""
    def body():
        rng = np.random.default_rng(SEED + 6)
        thetas = [
            SkewMatrix.from_upper(2, ["5/16"]),
            SkewMatrix.from_upper(2, ["-7/11"]),
            SkewMatrix.from_upper(3, ["1/3", "-1/4", "2/5"]),
            SkewMatrix.from_upper(3, ["3/16", "5/16", "-1/16"]),
            SkewMatrix.from_upper(3, ["1/7", "0", "9/13"]),
        ]
        worst, exact, count = 0.0, True, 0
        for th in thetas:
            rep = clock_shift_rep(th)
            for _ in range(100):
                x, y = (tuple(int(v) for v in rng.integers(-3, 4, size=th.n)) for _ in range(2))
                mx, my = TorusElement.monomial(th, x), TorusElement.monomial(th, y)
                worst = max(worst, max_entry(eval_element(rep, mul(mx, my)) - rep.monomial(x) @ rep.monomial(y)))
                exact &= mul(mx, my) == mul(my, mx).scale(Cyclotomic.phase(Phase(th.pairing(x, y))))
                count += 1
        return worst < 1e-10 and exact, f"{count} products, max defect {worst:.1e}, relation exact: {exact}"
    ok, detail, dt = _timed(body)
    return ok and dt < 10, f"{detail}, {dt:.2f}s (< 10s)"


def criterion_7():
    """Bimodule battery at the default grid."""
    def body():
        parts, ok = [], True
        for th in MODULE_THETAS:
            r = verify_module(th, GridSpec(), 1e-6)
            worst = max(r.residuals.values()) if r.residuals else float("nan")
            ok &= r.passed
            parts.append(f"n={th.n} theta12={th[0, 1]}: worst {worst:.1e}")
        return ok, "; ".join(parts)
    ok, detail, dt = _timed(body)
    return ok and dt < 60, f"{detail}, {dt:.1f}s (< 60s)"


def criterion_8():
    """Circle example through the CLI."""
    def body():
        out = io.StringIO()
        code = run(["example", "circle", "--cutoff", "64"], stdout=out)
        doc = json.loads(out.getvalue())
        return code == 0 and doc["residual"] < 1e-12, f"residual {doc['residual']:.1e}, exit {code}"
    ok, detail, dt = _timed(body)
    return ok and dt < 1, f"{detail}, {dt:.2f}s (< 1s)"


def criterion_9():
    """Real-structure sign table for n = 1..8."""
    signs = tuple(epsilon_j(n).value for n in range(1, 9))
    table = "".join("+" if s > 0 else "-" for s in signs)
    return signs == (-1, 1, 1, 1, -1, 1, 1, 1), f"signs {table}"


# Coarse grids with a window that is not a whole number of periods, so the
# residuals are genuine discretisation error and not already at roundoff.
COARSE, FINE = GridSpec(256, 2.7, 8), GridSpec(512, 5.4, 8)


def criterion_10():
    """Doubling N and L shrinks every residual family by at least 10x."""
    def body():
        worst_ratio, parts = float("inf"), []
        for th in MODULE_THETAS:
            a = verify_module(th, COARSE, strict=False)
            b = verify_module(th, FINE, strict=False)
            for fam in FAMILIES:
                ratio = a.residuals[fam] / max(b.residuals[fam], 1e-300)
                worst_ratio = min(worst_ratio, ratio)
            parts.append(f"theta12={th[0, 1]} n={th.n}")
        return worst_ratio >= 10, f"smallest reduction {worst_ratio:.1e}x over {len(parts)} thetas"
    ok, detail, dt = _timed(body)
    return ok and dt < 180, f"{detail}, {dt:.1f}s (< 180s)"


CRITERIA = {
    1: ("sigma2 involution on theta", criterion_1),
    2: ("Dirac involution", criterion_2),
    3: ("block formula consistency", criterion_3),
    4: ("group integrity", criterion_4),
    5: ("Clifford relations", criterion_5),
    6: ("symbolic/matrix oracle agreement", criterion_6),
    7: ("Heisenberg module battery", criterion_7),
    8: ("circle example", criterion_8),
    9: ("epsilon_J sign table", criterion_9),
    10: ("grid convergence", criterion_10),
}


def format_line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"[{'PASS' if ok else 'FAIL'}] criterion {k:2d} {CRITERIA[k][0]}: {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k][1]()
    RESULTS[k] = (ok, detail)
    print(format_line(k))
    assert ok, detail


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        RESULTS[k] = CRITERIA[k][1]()
        print(format_line(k))
