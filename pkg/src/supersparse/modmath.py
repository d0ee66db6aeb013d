"""Modular arithmetic over arbitrary-size integers.

Primality testing, random primes, generation of ``(p, q, omega)`` triples
with ``omega`` of order ``p`` in GF(q), and Newton lifting of such roots of
unity to ``Z/q^k Z``.

Every randomized routine takes an explicit ``random.Random`` handle.
"""

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import AlgorithmFailed, NotInvertible

try:
    from gmpy2 import is_strong_prp as _strong_prp
    from gmpy2 import powmod as _gmp_powmod

    def powmod(base, exp, mod):
        return int(_gmp_powmod(base, exp, mod))

except ImportError:  # pragma: no cover
    powmod = pow
    _strong_prp = None


def _mr_round(n, d, s, a):
    """One Miller-Rabin round to base ``a`` for odd ``n - 1 = d * 2**s``."""
    x = powmod(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False

MR_ROUNDS = 40


def _small_primes(bound):
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return [i for i in range(bound) if sieve[i]]


SMALL_PRIMES = _small_primes(1000)
_SMALL_SET = frozenset(SMALL_PRIMES)
_PRIMORIAL = math.prod(SMALL_PRIMES)


@dataclass(frozen=True)
class RingCtx:
    """The ring ``Z/mZ`` with ``m`` either prime or a known prime power."""

    modulus: int
    q: int | None = None
    exp: int | None = None

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.q is not None and self.q**self.exp != self.modulus:
            raise ValueError("modulus does not match q**exp")

    @classmethod
    def prime(cls, q):
        return cls(q, q, 1)

    @classmethod
    def prime_power(cls, q, exp):
        return cls(q**exp, q, exp)

    @property
    def kind(self):
        if self.q is None:
            return "generic"
        return "prime" if self.exp == 1 else "prime_power"

    def reduce(self, a):
        return a % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def pow(self, a, e):
        return powmod(a, e, self.modulus)

    def inv(self, a):
        return mod_inverse(a, self)

    def is_unit(self, a):
        return math.gcd(a, self.modulus) == 1

    def symmetric(self, a):
        """Lift a residue into ``(-m/2, m/2]``."""
        a %= self.modulus
        return a - self.modulus if 2 * a > self.modulus else a


def modulus_of(ctx):
    """Accept a RingCtx or a bare integer modulus."""
    return ctx.modulus if isinstance(ctx, RingCtx) else int(ctx)


class PruTriple(NamedTuple):
    p: int
    q: int
    omega: int


def mod_inverse(a, ctx):
    m = modulus_of(ctx)
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(a, m) from None


def is_prime(n, rng=None):
    """Trial division by primes below 1000, then 40 Miller-Rabin rounds."""
    if n < 2:
        return False
    if n < 1000:
        return n in _SMALL_SET
    if math.gcd(n, _PRIMORIAL) != 1:
        return False
    if rng is None:
        rng = random.Random(n)
    s = ((n - 1) & (1 - n)).bit_length() - 1
    d = (n - 1) >> s
    for _ in range(MR_ROUNDS):
        a = rng.randrange(2, n - 1)
        if _strong_prp is None:
            if not _mr_round(n, d, s, a):
                return False
        elif math.gcd(a, n) != 1 or not _strong_prp(n, a):
            return False
    return True


def random_prime_in(lam, rng):
    """Uniform random prime in the open interval ``(lam, 2*lam)``."""
    lam = int(lam)
    if lam < 2:
        raise ValueError("lambda must be at least 2")
    first = (lam + 1) | 1
    count = (2 * lam - 1 - first) // 2 + 1
    cap = max(1, math.ceil(64 * math.log(lam)))
    for _ in range(cap):
        n = first + 2 * rng.randrange(count)
        if is_prime(n, rng):
            return n
    raise AlgorithmFailed(f"no prime found in ({lam}, {2 * lam}) after {cap} draws")


def progression_prime(p, a_lo, a_hi, rng, cap):
    """Random prime ``a*p + 1`` with ``a`` uniform in ``[a_lo, a_hi]``."""
    for _ in range(cap):
        q = rng.randint(a_lo, a_hi) * p + 1
        if is_prime(q, rng):
            return q
    raise AlgorithmFailed(f"no prime q = a*{p}+1 with a in [{a_lo}, {a_hi}]")


def pru_from_zeta(p, q, zeta):
    """``zeta**((q-1)/p) mod q``: an element of order dividing ``p``."""
    return powmod(zeta, (q - 1) // p, q)


def random_pru(p, q, rng, cap=64):
    for _ in range(cap):
        omega = pru_from_zeta(p, q, rng.randint(2, q - 1))
        if omega != 1:
            return omega
    raise AlgorithmFailed(f"no {p}-th primitive root of unity found mod {q}")


def rigorous_lambda_floor(epsilon):
    return 2**58 / epsilon**2


def gen_triple(lam, epsilon=1 / 9, rigorous=False, rng=None):
    """Random ``(p, q, omega)``: ``lam < p < 2 lam``, ``p | q-1``, ``q <= lam**6``,
    ``omega`` of order ``p`` in GF(q).

    Raises AlgorithmFailed when one of the sampling caps is exhausted.
    """
    if rng is None:
        rng = random.Random()
    lam = math.ceil(lam)
    if rigorous and lam < rigorous_lambda_floor(epsilon):
        raise ValueError("rigorous mode needs lambda >= 2**58 / epsilon**2")
    p = random_prime_in(lam, rng)
    qmax = lam**6
    cap = math.ceil(96 * math.log(qmax))
    q = progression_prime(p, 1, (qmax - 1) // p, rng, cap)
    return PruTriple(p, q, random_pru(p, q, rng))


def is_valid_triple(triple):
    p, q, omega = triple
    return (
        is_prime(p)
        and is_prime(q)
        and (q - 1) % p == 0
        and 1 < omega < q
        and powmod(omega, p, q) == 1
    )


def lift_pru(triple, k):
    """Newton-lift ``omega`` to the unique p-th root of unity mod ``q**k`` above it.

    Each step doubles the q-adic precision: with ``w = omega_i`` known mod
    ``q**i``, the next ``i`` digits are ``((1 - w**p) / q**i) * w / p mod q**i``.
    """
    p, q, w = triple
    if k < 1:
        raise ValueError("k must be positive")
    i = 1
    qi = q
    while i < k:
        q2i = qi * qi
        num = 1 - powmod(w, p, q2i)
        a1, rem = divmod(num, qi)
        assert rem == 0, "omega is not a p-th root of unity mod q"
        a2 = a1 * w * pow(p, -1, qi) % qi
        w += a2 * qi
        i *= 2
        qi = q2i
    return w % q**k
