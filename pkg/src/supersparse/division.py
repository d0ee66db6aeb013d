"""Exact division of sparse integer polynomials and Monte Carlo product checks.

:func:`bounded_sparsity_division` interpolates ``f/g`` through a quotient
black box with a growing height guess; :func:`exact_division` doubles the
sparsity bound until a majority candidate passes :func:`verify_product`.
"""

import math

from ._amplify import majority, spawn
from .blackbox import QuotientMbb
from .exceptions import AlgorithmFailed, DenominatorNotUnit, SingularSystem
from .interp import IterationRecord, clog2, embedding_k, reconstruct_terms, residual_coefficients, residual_support
from .modmath import gen_triple, random_prime_in
from .sparsepoly import SparsePoly, eval_mod, kronecker, mul_mod_binomial, reduce_binomial, unkronecker
from .validation import check_positive_int, check_random_state, check_sparse_poly

MAX_T = 2**60


def _log(x):
    return math.log(x) if x > 1 else 0.0


# -- product checks ----------------------------------------------------------------


def verify_product(f, g, h, rho, rng=None, log=None):
    """Monte Carlo test of ``f == g*h``; ``"reject"`` is always right.

    Each of the ``rho`` trials compares both sides at ``1`` and ``omega`` for a
    fresh triple ``(p, q, omega)``.  A trial whose triple generation fails
    counts as a rejection.
    """
    rng = check_random_state(rng)
    for x in (f, g, h):
        check_sparse_poly(x, univariate=True)
    t2 = len(f) + len(g) * len(h)
    D = max(f.degree(), g.degree() + h.degree(), 0) + 1
    K = f.height() + len(g) * g.height() * h.height()
    lam = max(2, 10 * (t2 - 1) * math.log(2 * D), (96 * _log(K)) ** 0.2)
    for _ in range(rho):
        try:
            p, q, w = gen_triple(lam, 1 / 2, False, rng)
        except AlgorithmFailed:
            return "reject"
        if log is not None:
            log.append((p, q))
        for pt in (1, w):
            if eval_mod(f, pt, q, p) != eval_mod(g, pt, q, p) * eval_mod(h, pt, q, p) % q:
                return "reject"
    return "accept"


def verify_product_mod(f, g, h, p, rho, rng=None):
    """Monte Carlo test of ``f == g*h (mod x^p - 1)`` over the integers.

    Both sides are reduced below degree ``p`` and compared at a random point
    modulo a fresh random prime ``Q > 8p`` in each of ``rho`` trials.
    """
    rng = check_random_state(rng)
    lhs = reduce_binomial(f, p)
    rhs = mul_mod_binomial(g, h, p)
    B = max(8 * p, 2**20)
    for _ in range(rho):
        try:
            Q = random_prime_in(B, rng)
        except AlgorithmFailed:
            return "reject"
        beta = rng.randrange(1, Q)
        if eval_mod(lhs, beta, Q) != eval_mod(rhs, beta, Q):
            return "reject"
    return "accept"


def height_bound(Hf, Hg, t):
    """``(Hg + 1)**ceil((t - 1)/2) * Hf``: a height bound for the quotient."""
    return (Hg + 1) ** -(-(t - 1) // 2) * Hf


# -- bounded-sparsity division -----------------------------------------------------


def _loglog(H):
    # ceil(log2 log2 H), taken as 0 once log2 H <= 1
    lg = math.log2(H) if H > 1 else 0.0
    return math.ceil(math.log2(lg)) if lg > 1 else 0


def division_params(f, g, T):
    """``(Hmax, epsilon, lambda, D, cap)`` for a bounded-sparsity run."""
    Hf, Hg = f.height(), g.height()
    Hmax = height_bound(Hf, Hg, T)
    steps = max(1, clog2(T) + _loglog(Hmax))
    eps = 1 / (15 * steps)
    C = Hmax * len(g) * Hg
    D = f.degree() + 1
    lam = math.ceil(
        max(2, (5 / eps) * (max(T, len(g)) - 1) * _log(D), ((96 / eps) * _log(C)) ** 0.25)
    )
    return Hmax, eps, lam, D, 4 * steps


def bounded_sparsity_division(f, g, T, rng=None, trace=None, root_method="auto"):
    """Monte Carlo ``f/g`` assuming ``g | f`` and ``#(f/g) <= T``.

    A failed triple, a zero-divisor denominator, a singular system or an
    annihilator of degree above ``T`` only consumes one of the
    ``4 (ceil(log T) + ceil(log log Hmax))`` allowed iterations.  The result
    never has more than ``2T`` terms.

    The quotient box is probed at ``omega**j`` for ``j >= 1`` only: ``g(1)``
    may vanish identically (``g = x - 1``) while ``g`` stays coprime to the
    p-th cyclotomic polynomial.
    """
    check_sparse_poly(f, "f", univariate=True)
    check_sparse_poly(g, "g", univariate=True)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    T = check_positive_int(T, "sparsity bound T")
    rng = check_random_state(rng)
    T0 = T
    Hf, Hg = f.height(), g.height()
    Hmax, eps, lam, D, cap = division_params(f, g, T)
    test_trials = max(1, math.ceil(math.log2(1 / eps)))
    mbb = QuotientMbb(f, g)
    h = SparsePoly.zero()
    H0 = Hg + 1
    H0_cap = max(H0, (T0 * T0 + 1) * Hmax)
    it = 0
    while T >= 1 and it < cap:
        it += 1
        rec = IterationRecord(it)
        if trace is not None:
            trace.append(rec)
        try:
            triple = gen_triple(lam, eps, False, rng)
        except AlgorithmFailed:
            rec.cause = "gen_triple"
            continue
        p, q, _ = triple
        rec.p, rec.q = p, q
        try:
            support, cause = residual_support(mbb, h, triple, T, root_method, offset=1)
            if cause:
                rec.cause = cause
                continue
            k = embedding_k(q, 2 * H0 * Hf, D)
            rec.k, rec.support = k, len(support)
            if support:
                plain, shifted = residual_coefficients(mbb, h, triple, support, k, offset=1)
            else:
                plain = shifted = []
        except DenominatorNotUnit:
            rec.cause = "denominator"
            continue
        except SingularSystem:
            rec.cause = "singular"
            continue
        M = q ** (2 * k)
        hp = SparsePoly([(c - M if 2 * c > M else c, r) for c, r in zip(plain, support)])
        if verify_product_mod(f, g, hp + h, p, test_trials, rng) == "accept":
            terms = reconstruct_terms(plain, shifted, support, p, q, k, D, Hmax)
            rec.accepted = len(terms)
            rec.rejected = len(support) - len(terms)
            h = h + SparsePoly(terms)
            T //= 2
        else:
            rec.cause = "test_rejected"
            # f/g - h never exceeds (T^2 + 1) Hmax in height, so larger guesses change nothing
            H0 = min(H0 * H0, H0_cap)
    assert len(h) <= 2 * T0, "quotient candidate exceeds 2T terms"
    assert h.height() <= T0 * T0 * Hmax, "quotient candidate exceeds the height guard"
    return h


# -- sparsity doubling -------------------------------------------------------------


def division_candidates(rho):
    return math.ceil(48 * (rho + 1) / math.log2(math.e))


def exact_division(f, g, rho, rng=None, log=None, root_method="auto"):
    """``f/g`` with probability at least ``1 - 2**-rho`` when ``g | f``.

    The sparsity bound doubles from 2; at each bound the strict-majority
    candidate among ``ceil(48 (rho+1) / log2 e)`` runs is checked with
    :func:`verify_product` at error ``2**-(rho+1) / T``.  ``log`` collects
    ``(T, outcome)`` pairs.  FAIL only past ``T = 2**60``.
    """
    check_sparse_poly(f, "f", univariate=True)
    check_sparse_poly(g, "g", univariate=True)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rho = check_positive_int(rho, "rho")
    rng = check_random_state(rng)
    n = division_candidates(rho)
    T = 1
    while True:
        T *= 2
        if T > MAX_T:
            raise AlgorithmFailed("sparsity bound exceeded 2**60")
        rngs = spawn(rng, n)
        try:
            h = majority(lambda i: bounded_sparsity_division(f, g, T, rngs[i], root_method=root_method), n)
        except AlgorithmFailed:
            if log is not None:
                log.append((T, "no_majority"))
            continue
        verdict = verify_product(f, g, h, rho + 1 + clog2(T), rng)
        if log is not None:
            log.append((T, verdict))
        if verdict == "accept":
            return h


# -- multivariate wrapper ----------------------------------------------------------


def divide_multivariate(f, g, rho=4, T=None, rng=None, root_method="auto"):
    """Divide n-variate polynomials through Kronecker substitution.

    Uses ``D = maxdeg(f) + 1`` per variable; ``T`` selects the bounded
    sparsity algorithm directly.
    """
    if f.nvars != g.nvars:
        raise ValueError("f and g have different numbers of variables")
    n = f.nvars
    D = f.maxdeg() + 1
    fu, gu = (f, g) if n == 1 else (kronecker(f, D), kronecker(g, D))
    if T is None:
        h = exact_division(fu, gu, rho, rng, root_method=root_method)
    else:
        h = bounded_sparsity_division(fu, gu, T, rng, root_method=root_method)
    return h if n == 1 else unkronecker(h, n, D)
