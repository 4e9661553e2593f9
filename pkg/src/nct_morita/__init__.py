"""Morita equivalences of noncommutative tori and their equivariant spectral triples."""

from .clifford import CliffordRep, clifford_generators, verify_clifford
from .cyclotomic import Cyclotomic
from .dirac import (
    DiracData,
    transform_nu,
    transform_rho,
    transform_sigma2,
    transform_word,
)
from .errors import MoritaError
from .exact import Phase, RatMatrix, SkewMatrix, is_skew, phase_mul, rat_inverse
from .finite_rep import ClockShiftRep, clock_shift_rep, eval_element, verify_iso_invariance
from .heisenberg import (
    Connection,
    Embeddings,
    GridSpec,
    ModuleGrid,
    build_embeddings,
    connection_apply,
    left_action,
    right_action,
    verify_module,
)
from .sonn import (
    SIGMA2,
    GeneratorWord,
    Nu,
    Rho,
    Sigma2,
    SonnElement,
    act_on_theta,
    compose,
    make_nu,
    make_rho,
    make_sigma2,
    verify_membership,
    word_act,
)
from .torus import (
    OneForm,
    TorusElement,
    delta,
    dirac_commutator,
    epsilon_j,
    fluctuate_dim1,
    mul,
    star,
)

__version__ = "0.1.0"
