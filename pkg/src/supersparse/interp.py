"""Monte Carlo sparse interpolation from a modular black box.

One run of :func:`interpolate_mbb` repeatedly picks a triple ``(p, q, omega)``,
finds the exponents of ``(f - f*) mod <x^p - 1, q>`` with Berlekamp-Massey,
recovers the matching coefficients over ``Z/q^(2k)Z`` at plain and shifted
points, and turns each coefficient pair into a tentative term through the
identity ``(1 + q^k)^e = 1 + e q^k (mod q^(2k))``.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from ._amplify import majority, spawn
from .blackbox import KroneckerMbb
from .exceptions import AlgorithmFailed, SingularSystem
from .modmath import gen_triple, lift_pru, powmod, progression_prime, random_prime_in, random_pru, rigorous_lambda_floor
from .prony import berlekamp_massey, root_support, vandermonde_eval, vandermonde_solve
from .sparsepoly import SparsePoly, unkronecker
from .validation import check_bounds, check_random_state


class InterpBounds(NamedTuple):
    D: int
    T: int
    H: int
    rigorous: bool = False


@dataclass
class IterationRecord:
    iter: int
    p: int = 0
    q: int = 0
    k: int = 0
    support: int = 0
    accepted: int = 0
    rejected: int = 0
    cause: str = "-"

    def line(self):
        return (
            f"TRACE iter={self.iter} p={self.p} q={self.q} k={self.k} support={self.support}"
            f" accepted={self.accepted} rejected={self.rejected} cause={self.cause}"
        )


# -- parameters --------------------------------------------------------------------


def clog2(n):
    """``ceil(log2 n)`` for a positive integer, exactly."""
    return (n - 1).bit_length()


def interp_epsilon(T):
    # ceil(log T) vanishes at T = 1; one iteration then gets the whole 1/9 budget
    return 1 / (9 * max(1, clog2(T)))


def interp_lambda(bounds, epsilon):
    D, T, H, rigorous = bounds
    floor = rigorous_lambda_floor(epsilon) if rigorous else 2
    return math.ceil(
        max(
            floor,
            (5 / epsilon) * (T - 1) * math.log(D),
            ((48 / epsilon) * T * math.log(H)) ** 0.2,
        )
    )


def embedding_k(q, H2, D):
    """Smallest ``k >= 1`` with ``q^(2k) >= H2`` and ``q^k >= D``.

    That is ``ceil(max(log_q(H2) / 2, log_q D))`` in exact integer arithmetic.
    """
    k = 1
    qk = q
    while qk * qk < H2 or qk < D:
        k += 1
        qk *= q
    return k


# -- shared modular-image kernel ---------------------------------------------------


def _fstar_values(fstar, omega, N, m, order, scale=1):
    terms = fstar.univariate_terms()
    if scale != 1:
        coeffs = [c * powmod(scale, e, m) for c, e in terms]
    else:
        coeffs = [c for c, _ in terms]
    return vandermonde_eval(coeffs, [e for _, e in terms], omega, N, m, order=order)


def residual_support(mbb, fstar, triple, T, root_method="auto", offset=0):
    """Exponents of ``(f - f*) mod <x^p - 1, q>`` from ``2T`` probes at ``omega**(offset + j)``.

    Returns ``(support, cause)``; ``cause`` is None unless the annihilator
    has degree above ``T`` (support then empty).
    """
    p, q, omega = triple
    start = powmod(omega, offset, q)
    vals = mbb.probe_geometric(q, omega, 2 * T, order=p, scale=start)
    known = _fstar_values(fstar, omega, 2 * T, q, p, start)
    seq = [(a - b) % q for a, b in zip(vals, known)]
    lam = berlekamp_massey(seq, q, T)
    if len(lam) - 1 > T or len(lam) - 1 >= p:
        return [], "support_overflow"
    return root_support(lam, triple, root_method), None


def residual_coefficients(mbb, fstar, triple, support, k, offset=0):
    """Coefficients of ``(f - f*) mod <x^p - 1, q^(2k)>`` and of its shift by ``1 + q^k``.

    Probes ``2 * len(support)`` points ``s * omega_k**(offset + j)`` with
    ``s = 1`` and ``s = 1 + q^k``.  Raises SingularSystem on a non-unit pivot.
    """
    p, q, _ = triple
    t = len(support)
    M = q ** (2 * k)
    wk = lift_pru(triple, 2 * k)
    start = powmod(wk, offset, M)
    out = []
    for s in (1, 1 + q**k):
        vals = mbb.probe_geometric(M, wk, t, order=p, scale=s * start % M)
        known = _fstar_values(fstar, wk, t, M, p, s * start % M)
        c = vandermonde_solve(support, wk, [(a - b) % M for a, b in zip(vals, known)], M)
        if offset:
            # the solve returns c_r * omega_k**(offset r)
            c = [x * powmod(wk, (-offset * r) % p, M) % M for x, r in zip(c, support)]
        out.append(c)
    return out[0], out[1]


def reconstruct_terms(plain, shifted, support, p, q, k, D, Hcap):
    """Tentative ``(coeff, exponent)`` pairs from plain/shifted coefficient images.

    A pair survives when the plain coefficient is a unit, the ratio is
    ``1 + e q^k`` with ``e < D`` and ``e = r mod p``, and the symmetric lift of
    the coefficient is at most ``Hcap`` in absolute value.

    >>> reconstruct_terms([5], [33], [2], 3, 7, 1, 10, 24)
    [(5, 5)]
    """
    qk = q**k
    M = qk * qk
    out = []
    for c, c2, r in zip(plain, shifted, support):
        c %= M
        if c % q == 0:
            continue
        u = c2 * pow(c, -1, M) % M
        e, rem = divmod(u - 1, qk)
        if rem or e >= D or e % p != r:
            continue
        if 2 * c > M:
            c -= M
        if abs(c) > Hcap:
            continue
        out.append((c, e))
    return out


# -- interpolation loop ------------------------------------------------------------


def interpolate_mbb(mbb, bounds, rng=None, trace=None, root_method="auto"):
    """Single Monte Carlo run; returns f with probability at least 2/3.

    ``bounds`` is an :class:`InterpBounds` (or a ``(D, T, H)`` tuple).
    Raises AlgorithmFailed if a triple cannot be generated or a Vandermonde
    system turns out singular.  Records one :class:`IterationRecord` per loop
    pass into ``trace`` when a list is given.
    """
    if mbb.nvars != 1:
        raise ValueError("interpolate_mbb needs a univariate black box")
    bounds = InterpBounds(*bounds)
    D, T, H, rigorous = check_bounds(*bounds)
    rng = check_random_state(rng)
    eps = interp_epsilon(T)
    lam = interp_lambda(bounds, eps)
    fstar = SparsePoly.zero()
    it = 0
    while T >= 1:
        it += 1
        rec = IterationRecord(it)
        if trace is not None:
            trace.append(rec)
        try:
            triple = gen_triple(lam, eps, rigorous, rng)
        except AlgorithmFailed:
            rec.cause = "gen_triple"
            raise
        p, q, _ = triple
        rec.p, rec.q = p, q
        support, cause = residual_support(mbb, fstar, triple, T, root_method)
        rec.support = len(support)
        if cause:
            rec.cause = cause
        if support:
            k = embedding_k(q, 2 * H, D)
            rec.k = k
            try:
                plain, shifted = residual_coefficients(mbb, fstar, triple, support, k)
            except SingularSystem as exc:
                rec.cause = "singular"
                raise AlgorithmFailed(str(exc)) from exc
            terms = reconstruct_terms(plain, shifted, support, p, q, k, D, H)
            rec.accepted = len(terms)
            rec.rejected = len(support) - len(terms)
            fstar = fstar + SparsePoly(terms)
        T //= 2
    return fstar


def amplified_runs(rho):
    return math.ceil(48 * rho / math.log2(math.e))


def interpolate_amplified(mbb, bounds, rho, rng=None, root_method="auto", traces=None):
    """Majority vote over ``ceil(48 rho / log2 e)`` independent runs; error at most ``2**-rho``.

    Runs that FAIL still count towards the total.  Raises AlgorithmFailed
    when no candidate has a strict majority.
    """
    if rho < 1:
        raise ValueError("rho must be at least 1")
    n = amplified_runs(rho)
    rngs = spawn(check_random_state(rng), n)

    def run(i):
        tr = [] if traces is not None else None
        try:
            return interpolate_mbb(mbb, bounds, rngs[i], tr, root_method)
        except AlgorithmFailed:
            return None
        finally:
            if traces is not None:
                traces.append(tr)

    return majority(run, n)


def interpolate_multivariate(mbb, D, T, H, rho=None, rng=None, rigorous=False, root_method="auto"):
    """Interpolate an n-variate box with per-variable degrees below ``D`` via Kronecker."""
    n = mbb.nvars
    uni = mbb if n == 1 else KroneckerMbb(mbb, D)
    bounds = InterpBounds(D**n, T, H, rigorous)
    if rho is None:
        f = interpolate_mbb(uni, bounds, rng, root_method=root_method)
    else:
        f = interpolate_amplified(uni, bounds, rho, rng, root_method)
    return f if n == 1 else unkronecker(f, n, D)


# -- equality check ----------------------------------------------------------------


def verify_mbb_equal(mbb, fstar, D, H, T, rng=None):
    """Compare ``mbb`` with ``fstar`` at ``2T`` powers of a p-PRU mod q, ``p >= D``, ``q > 2H``.

    Returns ``"equal"`` or ``"not_equal"``.  When both sides obey the bounds
    a difference is always detected.
    """
    rng = check_random_state(rng)
    if mbb.nvars != 1:
        raise ValueError("verify_mbb_equal needs a univariate black box")
    p = random_prime_in(max(D, 2), rng)
    a_lo = max(1, -(-2 * H // p))
    a_hi = 2 * a_lo + 64
    cap = math.ceil(96 * math.log(a_hi * p + 1))
    q = progression_prime(p, a_lo, a_hi, rng, cap)
    omega = random_pru(p, q, rng)
    vals = mbb.probe_geometric(q, omega, 2 * T, order=p)
    known = _fstar_values(fstar, omega, 2 * T, q, p)
    return "equal" if vals == known else "not_equal"
