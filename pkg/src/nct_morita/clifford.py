"""Self-adjoint generators of the irreducible representation of Cl_{n,0}.

The tower is built two dimensions at a time.  From generators
``g_1..g_{2m}`` on C^d one gets generators on C^{2d}

    g_i (x) sigma_x,   Gamma (x) sigma_x,   I (x) sigma_y,

where ``Gamma = (-i)^m g_1 ... g_{2m}`` is the chirality element.  For odd
n the chirality of the even tower is appended as the last generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class CliffordRep:
    n: int
    dim: int
    generators: tuple[np.ndarray, ...]


def _chirality(gens: list[np.ndarray], dim: int) -> np.ndarray:
    m = len(gens) // 2
    prod = reduce(np.matmul, gens, np.eye(dim, dtype=complex))
    return (-1j) ** m * prod


def _even_tower(m: int) -> list[np.ndarray]:
    gens: list[np.ndarray] = []
    dim = 1
    for _ in range(m):
        gamma = _chirality(gens, dim)
        gens = [np.kron(g, SIGMA_X) for g in gens]
        gens.append(np.kron(gamma, SIGMA_X))
        gens.append(np.kron(np.eye(dim, dtype=complex), SIGMA_Y))
        dim *= 2
    return gens


def clifford_generators(n: int) -> CliffordRep:
    """Pauli-tower representation of dimension ``2**(n // 2)``."""
    if n < 1:
        raise ValueError("n must be positive")
    gens = _even_tower(n // 2)
    dim = 2 ** (n // 2)
    if n % 2:
        gens.append(_chirality(gens, dim))
    for g in gens:
        g.setflags(write=False)
    return CliffordRep(n=n, dim=dim, generators=tuple(gens))


@dataclass(frozen=True)
class CliffordReport:
    anticommutator_defect: float
    adjoint_defect: float
    traces: tuple[complex, ...]
    tol: float
    passed: bool


def verify_clifford(rep: CliffordRep, tol: float = 1e-12) -> CliffordReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    gens = rep.generators
    eye = np.eye(rep.dim)
    anti = 0.0
    for i, a in enumerate(gens):
        for j in range(i, len(gens)):
            b = gens[j]
            target = 2 * eye if i == j else 0
            anti = max(anti, float(np.max(np.abs(a @ b + b @ a - target))))
    adj = max((float(np.max(np.abs(g - g.conj().T))) for g in gens), default=0.0)
    traces = tuple(complex(np.trace(g)) for g in gens)
    traceless = rep.dim < 2 or all(abs(t) < tol for t in traces)
    return CliffordReport(anti, adj, traces, tol, anti < tol and adj < tol and traceless)


def positivity_defect(rep: CliffordRep, coeffs) -> float:
    """``|tr((sum c_i A_i)^dagger (sum c_i A_i)) - dim sum |c_i|^2|``."""
    c = np.asarray(coeffs, dtype=complex)
    a = sum(ci * g for ci, g in zip(c, rep.generators))
    return float(abs(np.trace(a.conj().T @ a) - rep.dim * np.sum(np.abs(c) ** 2)))
