"""Estimator-style front ends with scikit-learn parameter handling.

``fit`` consumes a black box (or a polynomial pair for division) and stores
the recovered polynomial; ``predict`` evaluates it modulo a given modulus.
"""

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .blackbox import KroneckerMbb, as_mbb
from .division import bounded_sparsity_division, exact_division
from .interp import InterpBounds, interpolate_amplified, interpolate_mbb, verify_mbb_equal
from .sparsepoly import eval_mod, kronecker, unkronecker
from .validation import check_bounds, check_positive_int, check_random_state, check_sparse_poly

ROOT_METHODS = ("auto", "chirp", "gcd")


def _check_root_method(method):
    if method not in ROOT_METHODS:
        raise ValueError(f"root_method must be one of {ROOT_METHODS}, got {method!r}")
    return method


def _predict(f, points, modulus):
    modulus = check_positive_int(modulus, "modulus", 2)
    return [eval_mod(f, (pt,) if isinstance(pt, int) else tuple(pt), modulus) for pt in points]


class SparseInterpolator(BaseEstimator):
    """Recover a sparse integer polynomial from a modular black box.

    Parameters
    ----------
    degree_bound : int
        Strict bound D on every exponent (per variable when multivariate).
    sparsity_bound : int
        Bound T on the number of terms.
    height_bound : int
        Bound H on the absolute value of the coefficients.
    rho : int or None
        With an integer, take a majority over independent runs so that the
        error is at most ``2**-rho``; None means one Monte Carlo run.
    rigorous : bool
        Use the provable lambda floor (not practical on a desktop).
    root_method : {"auto", "chirp", "gcd"}
    random_state : None, int or random.Random

    Attributes
    ----------
    poly_ : SparsePoly
    trace_ : list of IterationRecord (single-run mode only)
    n_probes_ : int
    n_vars_ : int
    """

    def __init__(
        self,
        degree_bound=None,
        sparsity_bound=None,
        height_bound=None,
        rho=None,
        rigorous=False,
        root_method="auto",
        random_state=None,
    ):
        self.degree_bound = degree_bound
        self.sparsity_bound = sparsity_bound
        self.height_bound = height_bound
        self.rho = rho
        self.rigorous = rigorous
        self.root_method = root_method
        self.random_state = random_state

    def fit(self, X, y=None):
        """``X`` is an Mbb, a SparsePoly or an SlpProgram."""
        D, T, H, rigorous = check_bounds(
            self.degree_bound, self.sparsity_bound, self.height_bound, self.rigorous
        )
        method = _check_root_method(self.root_method)
        rng = check_random_state(self.random_state)
        mbb = as_mbb(X)
        n = mbb.nvars
        uni = mbb if n == 1 else KroneckerMbb(mbb, D)
        bounds = InterpBounds(D**n, T, H, rigorous)
        before = uni.probe_count
        self.trace_ = []
        if self.rho is None:
            f = interpolate_mbb(uni, bounds, rng, self.trace_, method)
        else:
            rho = check_positive_int(self.rho, "rho")
            f = interpolate_amplified(uni, bounds, rho, rng, method)
        self.poly_ = f if n == 1 else unkronecker(f, n, D)
        self.n_probes_ = uni.probe_count - before
        self.n_vars_ = n
        return self

    def predict(self, points, modulus):
        """``poly_`` evaluated at each point modulo ``modulus``."""
        check_is_fitted(self, "poly_")
        return _predict(self.poly_, points, modulus)

    def verify(self, X, random_state=None):
        """True when the black box agrees with ``poly_`` at ``2T`` random-root points."""
        check_is_fitted(self, "poly_")
        mbb = as_mbb(X)
        D = self.degree_bound
        f = self.poly_
        if mbb.nvars > 1:
            mbb = KroneckerMbb(mbb, D)
            f = kronecker(f, D)
            D = D**self.n_vars_
        rng = check_random_state(random_state)
        return verify_mbb_equal(mbb, f, D, self.height_bound, self.sparsity_bound, rng) == "equal"


class ExactDivider(BaseEstimator):
    """Exact quotient ``f/g`` of sparse integer polynomials.

    ``sparsity_bound=None`` runs the unbounded algorithm (sparsity doubling
    plus a final product check); an integer runs one bounded-sparsity pass.
    """

    def __init__(self, rho=4, sparsity_bound=None, root_method="auto", random_state=None):
        self.rho = rho
        self.sparsity_bound = sparsity_bound
        self.root_method = root_method
        self.random_state = random_state

    def fit(self, f, g):
        check_sparse_poly(f, "f")
        check_sparse_poly(g, "g")
        if f.nvars != g.nvars:
            raise ValueError("f and g have different numbers of variables")
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        method = _check_root_method(self.root_method)
        rng = check_random_state(self.random_state)
        n = f.nvars
        D = f.maxdeg() + 1
        fu, gu = (f, g) if n == 1 else (kronecker(f, D), kronecker(g, D))
        self.log_ = []
        if self.sparsity_bound is None:
            rho = check_positive_int(self.rho, "rho")
            h = exact_division(fu, gu, rho, rng, self.log_, method)
        else:
            T = check_positive_int(self.sparsity_bound, "sparsity_bound")
            h = bounded_sparsity_division(fu, gu, T, rng, self.log_, method)
        self.quotient_ = h if n == 1 else unkronecker(h, n, D)
        return self

    def predict(self, points, modulus):
        check_is_fitted(self, "quotient_")
        return _predict(self.quotient_, points, modulus)
