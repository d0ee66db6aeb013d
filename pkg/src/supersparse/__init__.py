"""Sparse interpolation and exact division of integer polynomials from modular black boxes."""

from .blackbox import Mbb, QuotientMbb, SlpMbb, SlpProgram, SparseMbb, quotient_mbb, slp_from_poly, slp_mbb, sparse_mbb
from .division import bounded_sparsity_division, exact_division, height_bound, verify_product, verify_product_mod
from .estimators import ExactDivider, SparseInterpolator
from .exceptions import (
    AlgorithmFailed,
    DegreeBoundViolated,
    DenominatorNotUnit,
    FormatError,
    NotDivisible,
    NotInvertible,
    SingularSystem,
)
from .interp import InterpBounds, interpolate_amplified, interpolate_mbb, reconstruct_terms, verify_mbb_equal
from .modmath import PruTriple, RingCtx, gen_triple, is_prime, lift_pru, mod_inverse, random_prime_in
from .sparsepoly import SparsePoly, kronecker, naive_div, naive_mul, reduce_binomial, unkronecker

__version__ = "0.1.0"
