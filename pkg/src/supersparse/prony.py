"""Prony-style kernel over GF(q) and Z/q^k Z.

Polynomials here are dense coefficient lists, lowest degree first, with
entries reduced into ``[0, m)``.  Fast products go through Kronecker
segmentation: coefficient lists are packed into one big integer each and
multiplied with a single integer product.
"""

import math
import random

from .exceptions import SingularSystem
from .modmath import modulus_of, powmod

DIRECT_EVAL_LIMIT = 2**16
CHIRP_PER_ROOT = 3000
_NAIVE_MUL = 24


# -- packed products --------------------------------------------------------------


def _slot_bytes(m, n):
    return (2 * m.bit_length() + n.bit_length() + 8) // 8


def _pack(vals, w):
    return int.from_bytes(b"".join(v.to_bytes(w, "little") for v in vals), "little")


def _unpack(x, w, n):
    bs = x.to_bytes(w * n, "little")
    return [int.from_bytes(bs[i : i + w], "little") for i in range(0, w * n, w)]


def _raw_product(a, b, m):
    """Exact (unreduced) linear convolution of two residue lists."""
    n = len(a) + len(b) - 1
    w = _slot_bytes(m, min(len(a), len(b)))
    return _unpack(_pack(a, w) * _pack(b, w), w, n)


def poly_mul(a, b, m):
    """Linear convolution of ``a`` and ``b`` modulo ``m``."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= _NAIVE_MUL:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [v % m for v in out]
    return [v % m for v in _raw_product(a, b, m)]


def cyclic_convolution(a, b, ctx):
    """``c_j = sum_i a_i b_{(j-i) mod L}`` modulo the ring modulus."""
    m = modulus_of(ctx)
    L = len(a)
    if len(b) != L:
        raise ValueError("cyclic convolution needs equal lengths")
    if L == 0:
        return []
    full = _raw_product([x % m for x in a], [x % m for x in b], m)
    out = full[:L]
    for j in range(L, len(full)):
        out[j - L] += full[j]
    return [v % m for v in out]


# -- Berlekamp-Massey ----------------------------------------------------------


def berlekamp_massey(seq, ctx, T=None):
    """Minimal monic annihilator of ``seq`` over the prime field GF(q).

    Returns ascending coefficients ``[l_0, ..., l_L]`` with ``l_L = 1`` so that
    ``sum_i l_i * seq[j + i] == 0`` for every ``0 <= j < len(seq) - L``.
    """
    q = modulus_of(ctx)
    if T is not None and len(seq) != 2 * T:
        raise ValueError(f"expected {2 * T} values, got {len(seq)}")
    s = [v % q for v in seq]
    C, B = [1], [1]
    L, shift, b = 0, 1, 1
    for n in range(len(s)):
        d = s[n]
        for i in range(1, L + 1):
            d += C[i] * s[n - i]
        d %= q
        if d == 0:
            shift += 1
            continue
        coef = d * pow(b, -1, q) % q
        newC = C + [0] * max(0, len(B) + shift - len(C))
        for i, x in enumerate(B):
            newC[i + shift] = (newC[i + shift] - coef * x) % q
        if 2 * L <= n:
            B, L, b, shift = C, n + 1 - L, d, 1
        else:
            shift += 1
        C = newC
    C = (C + [0] * (L + 1))[: L + 1]
    return C[::-1]


# -- dense polynomial helpers mod q ------------------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b, q):
    a = list(a)
    inv = pow(b[-1], -1, q)
    db = len(b) - 1
    quot = [0] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % q
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % q
    return quot, _trim(a[:db])


def _reduce_monic(r, mod, q):
    """``r mod (mod, q)`` for monic ``mod``; ``r`` may hold unreduced integers."""
    L = len(mod) - 1
    low = mod[:L]
    for i in range(len(r) - 1, L - 1, -1):
        c = r[i] % q
        if c:
            base = i - L
            for j, m in enumerate(low):
                r[base + j] -= c * m
    return _trim([x % q for x in r[:L]])


def _square(a):
    n = len(a)
    if not n:
        return []
    out = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            out[2 * i] += x * x
            x2 = 2 * x
            for j in range(i + 1, n):
                out[i + j] += x2 * a[j]
    return out


def _poly_mulmod(a, b, mod, q):
    return _reduce_monic(list(poly_mul(a, b, q)), mod, q)


def _poly_powmod_x(e, mod, q, shift=0):
    """``(x + shift)**e mod (mod, q)`` for monic ``mod``, left-to-right binary."""
    shift %= q
    result = _reduce_monic([1], mod, q)
    for bit in bin(e)[2:]:
        result = _reduce_monic(_square(result), mod, q)
        if bit == "1":
            # multiply by x + shift: a shift plus a scaled copy
            nxt = [0] + result
            for i, x in enumerate(result):
                nxt[i] += shift * x
            result = _reduce_monic(nxt, mod, q)
    return result


def _poly_gcd(a, b, q):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_divmod(a, b, q)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return [x * inv % q for x in a]


def _split_roots(G, q, rng, out):
    """Roots of a monic squarefree ``G`` that splits into linear factors."""
    if len(G) == 1:
        return
    if len(G) == 2:
        out.append(-G[0] % q)
        return
    while True:
        h = _poly_powmod_x((q - 1) // 2, G, q, rng.randrange(q)) or [0]
        h[0] = (h[0] - 1) % q
        F = _poly_gcd(G, h, q)
        if 1 < len(F) < len(G):
            break
    _split_roots(F, q, rng, out)
    _split_roots(_poly_divmod(G, F, q)[0], q, rng, out)


def _discrete_logs(roots, omega, p, q):
    """Exponents ``e < p`` with ``omega**e == r`` for each ``r`` (baby-step giant-step)."""
    if not roots:
        return []
    m = math.isqrt(p) + 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = x * omega % q
    giant = pow(omega, -m, q)
    logs = []
    for r in roots:
        y = r
        for i in range(m + 1):
            j = baby.get(y)
            if j is not None:
                logs.append((i * m + j) % p)
                break
            y = y * giant % q
        else:
            raise ValueError(f"{r} is not a power of omega")
    return logs


# -- support extraction ----------------------------------------------------------


def _support_chirp(lam, p, q, omega):
    # omega^(ij) = beta^((i+j)^2 - i^2 - j^2) with beta = omega^(1/2 mod p)
    L = len(lam) - 1
    beta = powmod(omega, (p + 1) // 2, q)
    pw = [1] * p
    x = 1
    for e in range(1, p):
        x = x * beta % q
        pw[e] = x
    sq = [s * s % p for s in range(p)]
    u = [lam[i] * pw[-sq[i % p] % p] % q for i in range(L + 1)]
    v = [pw[sq[s % p]] for s in range(p + L)]
    # corr_j = sum_i u_i v_{i+j} = (reversed(u) * v)_{j+L}; zero iff Lam(omega^j) = 0
    corr = _raw_product(u[::-1], v, q)
    return [j for j in range(p) if corr[j + L] % q == 0]


def _support_gcd(lam, p, q, omega):
    lam = _trim(list(lam))
    while lam and lam[0] == 0:
        lam.pop(0)
    if len(lam) <= 1:
        return []
    inv = pow(lam[-1], -1, q)
    lam = [c * inv % q for c in lam]
    xp = _poly_powmod_x(p, lam, q) or [0]
    xp[0] = (xp[0] - 1) % q
    G = _poly_gcd(lam, _trim(xp), q)
    roots = []
    _split_roots(G, q, random.Random(q ^ p), roots)
    return sorted(_discrete_logs(roots, omega, p, q))


def root_support(lam, triple, method="auto"):
    """``{e in [0, p) : Lam(omega**e) == 0 in GF(q)}`` as a sorted list.

    ``method="chirp"`` evaluates Lam at all p powers of omega with one
    Bluestein convolution; ``method="gcd"`` splits ``gcd(Lam, x^p - 1)`` and
    takes discrete logarithms.  ``"auto"`` picks chirp when p is small relative to deg Lam.
    """
    p, q, omega = triple
    lam = [c % q for c in lam]
    if len(lam) - 1 >= p:
        raise ValueError("annihilator degree must be below p")
    if not any(lam[1:]):
        return [] if lam[0] else list(range(p))
    if method == "auto":
        # measured crossover: chirp is linear in p, the gcd route roughly quadratic in deg Lam
        method = "chirp" if p <= CHIRP_PER_ROOT * max(len(lam) - 1, 8) else "gcd"
    if method == "chirp":
        return _support_chirp(lam, p, q, omega)
    if method == "gcd":
        return _support_gcd(lam, p, q, omega)
    raise ValueError(f"unknown root method {method!r}")


# -- transposed Vandermonde ------------------------------------------------------


def _series_inverse(a, n, m):
    """Inverse of ``a`` modulo ``z**n``; requires ``a[0] == 1``."""
    g = [1]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = poly_mul(a[:prec], g, m)[:prec]
        e = [(-x) % m for x in e]
        e[0] = (e[0] + 2) % m
        g = poly_mul(g, e, m)[:prec]
    return g


def _eval_power_series(coeffs, points, N, m):
    # sum_i c_i / (1 - a_i z) = num/den, so the power sums are num * den^-1 mod z^N
    layer = [([c % m], [1, (-a) % m]) for c, a in zip(coeffs, points)]
    while len(layer) > 1:
        nxt = []
        for k in range(0, len(layer) - 1, 2):
            (n1, d1), (n2, d2) = layer[k], layer[k + 1]
            num = poly_mul(n1, d2, m)
            other = poly_mul(n2, d1, m)
            num = [(x + y) % m for x, y in zip(num, other + [0] * (len(num) - len(other)))]
            nxt.append((num[:N], poly_mul(d1, d2, m)[: N + 1]))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    num, den = layer[0]
    out = poly_mul(num, _series_inverse(den, N, m), m)[:N]
    return out + [0] * (N - len(out))


def vandermonde_eval(coeffs, exps, omega, N, ctx, order=None, points=None):
    """``[sum_i c_i * omega**(j * e_i) for j in range(N)]`` modulo the ring modulus.

    Exponents need not be distinct.  Uses direct summation when
    ``len(coeffs) * N`` is small, otherwise a power-series evaluation built on
    packed products.  ``points`` may supply the precomputed ``omega**e_i``.
    """
    m = modulus_of(ctx)
    if order is not None:
        if order <= DIRECT_EVAL_LIMIT:
            assert powmod(omega, order, m) == 1, "omega does not have the given order"
        exps = [e % order for e in exps]
    if N <= 0:
        return []
    if not coeffs:
        return [0] * N
    if points is None:
        points = [powmod(omega, e, m) for e in exps]
    if len(coeffs) * N <= DIRECT_EVAL_LIMIT:
        acc = [0] * N
        for c, a in zip(coeffs, points):
            v = c % m
            if not v:
                continue
            acc[0] += v
            for j in range(1, N):
                v = v * a % m
                acc[j] += v
        return [x % m for x in acc]
    return _eval_power_series(coeffs, points, N, m)


def vandermonde_solve(support, omega, seq, ctx):
    """Coefficients ``c`` on ``support`` with ``vandermonde_eval(c, support, omega, t) == seq``.

    Quadratic master-polynomial method; every pivot
    ``prod_{l != i} (a_i - a_l)`` must be a unit or SingularSystem is raised.
    """
    m = modulus_of(ctx)
    t = len(support)
    if len(seq) != t:
        raise ValueError("need exactly one value per support element")
    if t == 0:
        return []
    a = [powmod(omega, e, m) for e in support]
    master = [1]
    for ai in a:
        nxt = [0] * (len(master) + 1)
        for j, x in enumerate(master):
            nxt[j + 1] += x
            nxt[j] -= ai * x
        master = [x % m for x in nxt]
    vals = [v % m for v in seq]
    out = []
    for ai in a:
        # master / (z - ai) by synthetic division, highest degree first
        quot = [0] * t
        carry = 0
        for j in range(t, 0, -1):
            carry = (master[j] + carry * ai) % m
            quot[j - 1] = carry
        num = sum(x * y for x, y in zip(quot, vals)) % m
        den = 0
        for x in reversed(quot):
            den = (den * ai + x) % m
        if math.gcd(den, m) != 1:
            raise SingularSystem(f"pivot {den} is not a unit modulo {m}")
        out.append(num * pow(den, -1, m) % m)
    return out
