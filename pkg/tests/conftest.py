import math
import random

import pytest
from hypothesis import HealthCheck, settings

from supersparse.sparsepoly import SparsePoly

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def sieve(n):
    flags = bytearray([1]) * n
    flags[:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, n, i)))
    return [i for i in range(n) if flags[i]]


def det_miller_rabin(n):
    """Deterministic Miller-Rabin with the first 13 prime bases (exact below 3.3e24)."""
    if n < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for b in bases:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_sparse(rng, t, D, H, nvars=1):
    """``t`` distinct exponents below ``D`` per variable, coefficients in ``[-H, H] \\ {0}``."""
    exps = set()
    while len(exps) < t:
        exps.add(tuple(rng.randrange(D) for _ in range(nvars)))
    return SparsePoly(
        [(rng.choice((-1, 1)) * rng.randint(1, H), e) for e in sorted(exps)], nvars
    )


def dense_eval(f, theta, m):
    """Plain Python evaluation with the built-in pow (independent of eval_mod)."""
    if isinstance(theta, int):
        theta = (theta,)
    total = 0
    for c, e in f.terms:
        term = c
        for x, k in zip(theta, e):
            term *= pow(x, k, m)
        total += term
    return total % m


@pytest.fixture
def rng():
    return random.Random(20240611)
