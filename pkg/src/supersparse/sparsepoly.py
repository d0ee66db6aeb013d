"""Sparse integer polynomials, Kronecker substitution and dense test oracles.

A :class:`SparsePoly` is an immutable list of ``(coeff, exponents)`` terms in
canonical form: nonzero coefficients, distinct exponent tuples, sorted
lexicographically by exponent.  The zero polynomial is the empty term list.
"""

from .exceptions import DegreeBoundViolated, FormatError, NotDivisible
from .modmath import modulus_of, powmod

DENSE_GUARD = 10**6


def _exps(e, nvars):
    if isinstance(e, int):
        e = (e,)
    else:
        e = tuple(int(x) for x in e)
    if len(e) != nvars:
        raise ValueError(f"exponent {e} does not have {nvars} entries")
    if any(x < 0 for x in e):
        raise ValueError(f"negative exponent in {e}")
    return e


class SparsePoly:
    """Canonical sparse polynomial over the integers.

    Terms with equal exponents are summed on construction and zero terms are
    dropped, so ``SparsePoly([(1, 2), (-1, 2)])`` is the zero polynomial.

    >>> SparsePoly([(3, 1000), (5, 0)])
    SparsePoly([(5, (0,)), (3, (1000,))], nvars=1)
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms=(), nvars=1):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        acc = {}
        for c, e in terms:
            e = _exps(e, nvars)
            acc[e] = acc.get(e, 0) + int(c)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(
            self, "terms", tuple((acc[e], e) for e in sorted(acc) if acc[e])
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    @classmethod
    def _from_acc(cls, acc, nvars):
        # trusted {exponent tuple: coeff} from the module's own operations
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", tuple((acc[e], e) for e in sorted(acc) if acc[e]))
        object.__setattr__(self, "_hash", None)
        return self

    def _combine(self, other, sign):
        acc = dict((e, c) for c, e in self.terms)
        for c, e in other.terms:
            acc[e] = acc.get(e, 0) + sign * c
        return SparsePoly._from_acc(acc, self.nvars)

    @classmethod
    def from_dict(cls, d, nvars=1):
        """Build from ``{exponent: coeff}``; univariate keys may be plain ints."""
        return cls(((c, e) for e, c in d.items()), nvars)

    @classmethod
    def zero(cls, nvars=1):
        return cls((), nvars)

    @classmethod
    def constant(cls, c, nvars=1):
        return cls([(c, (0,) * nvars)], nvars)

    def to_dict(self):
        """``{exponent: coeff}`` with int keys when univariate."""
        if self.nvars == 1:
            return {e[0]: c for c, e in self.terms}
        return {e: c for c, e in self.terms}

    def univariate_terms(self):
        """List of ``(coeff, exponent)`` with integer exponents."""
        if self.nvars != 1:
            raise ValueError("polynomial is not univariate")
        return [(c, e[0]) for c, e in self.terms]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def sparsity(self):
        return len(self.terms)

    def height(self):
        return max((abs(c) for c, _ in self.terms), default=0)

    def maxdeg(self):
        return max((x for _, e in self.terms for x in e), default=0)

    def degree(self):
        """Univariate degree; -1 for the zero polynomial."""
        if self.nvars != 1:
            raise ValueError("polynomial is not univariate")
        return self.terms[-1][1][0] if self.terms else -1

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, self.terms)))
        return self._hash

    def __repr__(self):
        return f"SparsePoly({list(self.terms)!r}, nvars={self.nvars})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for c, e in reversed(self.terms):
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def _check_nvars(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomials have different numbers of variables")

    def __neg__(self):
        return SparsePoly._from_acc({e: -c for c, e in self.terms}, self.nvars)

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_nvars(other)
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_nvars(other)
        return self._combine(other, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return SparsePoly._from_acc({e: c * other for c, e in self.terms}, self.nvars)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return naive_mul(self, other)

    __rmul__ = __mul__

    def to_text(self):
        return dumps(self)

    @classmethod
    def from_text(cls, text):
        return loads(text)


# -- SPOLY 1 text format --------------------------------------------------------


def dumps(f):
    """Canonical SPOLY 1 text; one term per line."""
    lines = [f"SPOLY 1 {f.nvars}"]
    lines.extend(" ".join(map(str, (c, *e))) for c, e in f.terms)
    return "\n".join(lines) + "\n"


def loads(text):
    """Parse SPOLY 1 text, rejecting zero coefficients and repeated exponents."""
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty SPOLY input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "SPOLY" or head[1] != "1":
        raise FormatError(f"bad SPOLY header: {lines[0]!r}")
    try:
        nvars = int(head[2])
    except ValueError:
        raise FormatError(f"bad variable count: {head[2]!r}") from None
    if nvars < 1:
        raise FormatError("variable count must be positive")
    terms = []
    seen = set()
    for ln in lines[1:]:
        fields = ln.split()
        if len(fields) != nvars + 1:
            raise FormatError(f"expected {nvars + 1} fields: {ln!r}")
        try:
            c, *e = (int(x, 10) for x in fields)
        except ValueError:
            raise FormatError(f"non-integer field in {ln!r}") from None
        if c == 0:
            raise FormatError(f"zero coefficient: {ln!r}")
        e = tuple(e)
        if any(x < 0 for x in e) or any(x.startswith(("-", "+")) for x in fields[1:]):
            raise FormatError(f"exponents must be plain nonnegative integers: {ln!r}")
        if e in seen:
            raise FormatError(f"duplicate exponent {e}")
        seen.add(e)
        terms.append((c, e))
    return SparsePoly(terms, nvars)


def read_spoly(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_spoly(path, f):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(f))


# -- substitutions ---------------------------------------------------------------


def kronecker(f, D):
    """``f(x, x^D, ..., x^(D^(n-1)))``; requires every exponent entry ``< D``."""
    out = []
    for c, e in f.terms:
        if any(x >= D for x in e):
            raise DegreeBoundViolated(f"exponent {e} not below {D}")
        u = 0
        for x in reversed(e):
            u = u * D + x
        out.append((c, u))
    return SparsePoly(out, 1)


def unkronecker(f, n, D):
    """Inverse of :func:`kronecker`: base-``D`` digits, least significant first."""
    if f.nvars != 1:
        raise ValueError("unkronecker expects a univariate polynomial")
    bound = D**n
    out = []
    for c, (u,) in f.terms:
        if u >= bound:
            raise DegreeBoundViolated(f"exponent {u} not below {D}^{n}")
        digits = []
        for _ in range(n):
            u, r = divmod(u, D)
            digits.append(r)
        out.append((c, tuple(digits)))
    return SparsePoly(out, n)


def _univariate(f):
    if f.nvars != 1:
        raise ValueError("polynomial is not univariate")
    return f.terms


def reduce_binomial(f, p):
    """``f mod x^p - 1``."""
    if p < 1:
        raise ValueError("p must be positive")
    acc = {}
    for c, (e,) in _univariate(f):
        k = (e % p,)
        acc[k] = acc.get(k, 0) + c
    return SparsePoly._from_acc(acc, 1)


def mul_mod_binomial(g, h, p):
    """``g*h mod x^p - 1`` without forming the full product."""
    acc = {}
    hh = [(c, e % p) for c, e in h.univariate_terms()]
    for cg, eg in g.univariate_terms():
        eg %= p
        for ch, eh in hh:
            e = eg + eh
            if e >= p:
                e -= p
            acc[e] = acc.get(e, 0) + cg * ch
    return SparsePoly._from_acc({(e,): c for e, c in acc.items()}, 1)


def eval_mod(f, theta, ctx, order=None):
    """``f(theta) mod m``.

    When ``order`` is given it must be a multiple of the multiplicative order
    of every ``theta_j``; exponents are reduced modulo it first.
    """
    m = modulus_of(ctx)
    if isinstance(theta, int):
        theta = (theta,)
    if len(theta) != f.nvars:
        raise ValueError(f"expected {f.nvars} evaluation points")
    acc = 0
    for c, e in f.terms:
        t = c
        for th, x in zip(theta, e):
            if x:
                t = t * powmod(th, x % order if order else x, m) % m
        acc += t
    return acc % m


# -- dense oracles ---------------------------------------------------------------


def naive_mul(f, g):
    """Exact product by term-by-term expansion."""
    f._check_nvars(g)
    acc = {}
    for cf, ef in f.terms:
        for cg, eg in g.terms:
            e = tuple(a + b for a, b in zip(ef, eg))
            acc[e] = acc.get(e, 0) + cf * cg
    return SparsePoly._from_acc(acc, f.nvars)


def naive_div(f, g):
    """Exact quotient ``f/g`` by dense long division; NotDivisible otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.nvars != 1 or g.nvars != 1:
        raise ValueError("naive_div is univariate")
    df, dg = f.degree(), g.degree()
    if df > DENSE_GUARD:
        raise ValueError(f"degree {df} exceeds the dense guard {DENSE_GUARD}")
    if df < dg:
        if f.is_zero():
            return SparsePoly.zero()
        raise NotDivisible("degree of f is below degree of g")
    rem = [0] * (df + 1)
    for c, e in f.univariate_terms():
        rem[e] = c
    gterms = g.univariate_terms()
    lead = gterms[-1][0]
    quot = {}
    for i in range(df - dg, -1, -1):
        c = rem[i + dg]
        if not c:
            continue
        qc, r = divmod(c, lead)
        if r:
            raise NotDivisible("leading coefficient does not divide")
        quot[i] = qc
        for cg, eg in gterms:
            rem[i + eg] -= qc * cg
    if any(rem):
        raise NotDivisible("nonzero remainder")
    return SparsePoly.from_dict(quot)
