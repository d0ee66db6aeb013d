"""Modular black boxes: ``(m, theta) -> f(theta) mod m``.

Three backends are provided (a sparse polynomial, a straight-line program and
the exact quotient of two sparse polynomials) plus a Kronecker adapter that
presents an n-variate box as a univariate one.
"""

import math
import re
import threading

from .exceptions import DenominatorNotUnit, FormatError
from .modmath import modulus_of, powmod
from .prony import vandermonde_eval
from .sparsepoly import SparsePoly, eval_mod


class Mbb:
    """Base black box.  Subclasses implement :meth:`_eval`."""

    def __init__(self, nvars=1):
        self.nvars = nvars
        self._count = 0
        self._lock = threading.Lock()

    @property
    def probe_count(self):
        return self._count

    def _bump(self, n=1):
        with self._lock:
            self._count += n

    def reset_count(self):
        with self._lock:
            self._count = 0

    def _theta(self, theta):
        if isinstance(theta, int):
            theta = (theta,)
        theta = tuple(theta)
        if len(theta) != self.nvars:
            raise ValueError(f"expected {self.nvars} evaluation points, got {len(theta)}")
        return theta

    def probe(self, ctx, theta):
        """One evaluation ``f(theta) mod m``; counts as one probe."""
        m = modulus_of(ctx)
        theta = tuple(t % m for t in self._theta(theta))
        value = self._eval(m, theta)
        self._bump()
        return value

    def probe_geometric(self, ctx, base, count, order=None, scale=1):
        """Probe the univariate box at ``scale * base**j`` for ``j < count``.

        ``order`` is any multiple of the multiplicative order of ``base``;
        backends may use it to reduce exponents.  Counts ``count`` probes.
        """
        if self.nvars != 1:
            raise ValueError("geometric probing needs a univariate box")
        m = modulus_of(ctx)
        out = []
        x = scale % m
        for _ in range(count):
            out.append(self.probe(m, x))
            x = x * base % m
        return out

    def _eval(self, m, theta):
        raise NotImplementedError

    def __call__(self, ctx, theta):
        return self.probe(ctx, theta)


class _PointCache:
    """Remembers ``base**e`` tables for the last few ``(poly, m, base, order)`` keys."""

    def __init__(self, size=4):
        self.size = size
        self.entries = {}
        self.lock = threading.Lock()

    def points(self, f, m, base, order):
        key = (id(f), m, base, order)
        with self.lock:
            hit = self.entries.get(key)
        if hit is not None:
            return hit
        pts = [powmod(base, e % order if order else e, m) for _, (e,) in f.terms]
        with self.lock:
            if len(self.entries) >= self.size:
                self.entries.pop(next(iter(self.entries)))
            self.entries[key] = pts
        return pts


def _geometric_sum(f, m, base, count, order, scale, cache=None):
    """``[f(scale * base**j) mod m for j < count]`` for univariate ``f``."""
    terms = f.univariate_terms()
    coeffs = [c * powmod(scale, e, m) if scale != 1 else c for c, e in terms]
    pts = cache.points(f, m, base, order) if cache is not None else None
    return vandermonde_eval(coeffs, [e for _, e in terms], base, count, m, order=order, points=pts)


class SparseMbb(Mbb):
    """Black box backed by an explicit :class:`SparsePoly`."""

    def __init__(self, f):
        super().__init__(f.nvars)
        self.poly = f
        self._cache = _PointCache()

    def _eval(self, m, theta):
        return eval_mod(self.poly, theta, m)

    def probe_geometric(self, ctx, base, count, order=None, scale=1):
        if self.nvars != 1:
            raise ValueError("geometric probing needs a univariate box")
        m = modulus_of(ctx)
        out = _geometric_sum(self.poly, m, base % m, count, order, scale % m, self._cache)
        self._bump(count)
        return out


def sparse_mbb(f):
    return SparseMbb(f)


class QuotientMbb(Mbb):
    """Black box for ``f/g`` evaluated as ``f(theta) * g(theta)**-1``.

    Raises DenominatorNotUnit when ``g(theta)`` shares a factor with ``m``.
    """

    def __init__(self, f, g):
        if f.nvars != g.nvars:
            raise ValueError("f and g have different numbers of variables")
        if g.is_zero():
            raise ZeroDivisionError("quotient box with g = 0")
        super().__init__(f.nvars)
        self.f = f
        self.g = g
        self._cache = _PointCache()

    @staticmethod
    def _divide(a, b, m):
        if math.gcd(b, m) != 1:
            raise DenominatorNotUnit(b, m)
        return a * pow(b, -1, m) % m

    def _eval(self, m, theta):
        return self._divide(eval_mod(self.f, theta, m), eval_mod(self.g, theta, m), m)

    def probe_geometric(self, ctx, base, count, order=None, scale=1):
        if self.nvars != 1:
            raise ValueError("geometric probing needs a univariate box")
        m = modulus_of(ctx)
        fv = _geometric_sum(self.f, m, base % m, count, order, scale % m, self._cache)
        gv = _geometric_sum(self.g, m, base % m, count, order, scale % m, self._cache)
        out = [self._divide(a, b, m) for a, b in zip(fv, gv)]
        self._bump(count)
        return out


def quotient_mbb(f, g):
    return QuotientMbb(f, g)


class KroneckerMbb(Mbb):
    """Univariate view ``x -> inner(x, x^D, ..., x^(D^(n-1)))`` of an n-variate box."""

    def __init__(self, inner, D):
        super().__init__(1)
        self.inner = inner
        self.D = D

    def _eval(self, m, theta):
        (x,) = theta
        pts = []
        for _ in range(self.inner.nvars):
            pts.append(x)
            x = powmod(x, self.D, m)
        return self.inner.probe(m, tuple(pts))


# -- straight-line programs -------------------------------------------------------

_REG = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ARITY = {"const": 1, "add": 2, "sub": 2, "mul": 2}


class SlpProgram:
    """Straight-line program over inputs ``x1..xn`` in single static assignment form.

    ``instructions`` is a list of ``(dest, op, args)`` with ``op`` one of
    const/add/sub/mul; ``const`` takes an integer, the others take two
    register names.  Validated on construction.
    """

    def __init__(self, ninputs, instructions, output):
        if ninputs < 1:
            raise FormatError("an SLP needs at least one input")
        self.ninputs = ninputs
        self.instructions = [(d, op, tuple(a)) for d, op, a in instructions]
        self.output = output
        self._validate()

    def _validate(self):
        defined = {f"x{i + 1}" for i in range(self.ninputs)}
        for dest, op, args in self.instructions:
            if op not in _ARITY:
                raise FormatError(f"unknown SLP operation {op!r}")
            if len(args) != _ARITY[op]:
                raise FormatError(f"{op} takes {_ARITY[op]} operand(s)")
            if not _REG.match(dest):
                raise FormatError(f"bad register name {dest!r}")
            if dest in defined:
                raise FormatError(f"register {dest!r} assigned twice")
            if op == "const":
                if not isinstance(args[0], int):
                    raise FormatError("const operand must be an integer")
            else:
                for a in args:
                    if a not in defined:
                        raise FormatError(f"register {a!r} used before definition")
            defined.add(dest)
        if self.output not in defined:
            raise FormatError(f"output register {self.output!r} is undefined")

    def __len__(self):
        return len(self.instructions)

    def evaluate(self, theta, m):
        regs = {f"x{i + 1}": t % m for i, t in enumerate(theta)}
        for dest, op, args in self.instructions:
            if op == "const":
                regs[dest] = args[0] % m
            elif op == "add":
                regs[dest] = (regs[args[0]] + regs[args[1]]) % m
            elif op == "sub":
                regs[dest] = (regs[args[0]] - regs[args[1]]) % m
            else:
                regs[dest] = regs[args[0]] * regs[args[1]] % m
        return regs[self.output]

    def to_text(self):
        lines = [f"SLP 1 {self.ninputs}"]
        for dest, op, args in self.instructions:
            lines.append(f"{dest} = {op} " + " ".join(map(str, args)))
        lines.append(f"out {self.output}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise FormatError("empty SLP input")
        head = lines[0].split()
        if len(head) != 3 or head[:2] != ["SLP", "1"] or not head[2].isdigit():
            raise FormatError(f"bad SLP header: {lines[0]!r}")
        instructions = []
        output = None
        for ln in lines[1:]:
            if output is not None:
                raise FormatError("instructions after the out line")
            fields = ln.split()
            if fields[0] == "out":
                if len(fields) != 2:
                    raise FormatError(f"bad out line: {ln!r}")
                output = fields[1]
                continue
            if len(fields) < 3 or fields[1] != "=":
                raise FormatError(f"bad SLP line: {ln!r}")
            dest, op, args = fields[0], fields[2], fields[3:]
            if op == "const":
                try:
                    args = [int(a, 10) for a in args]
                except ValueError:
                    raise FormatError(f"bad constant in {ln!r}") from None
            instructions.append((dest, op, args))
        if output is None:
            raise FormatError("missing out line")
        return cls(int(head[2]), instructions, output)


def read_slp(path):
    with open(path, encoding="utf-8") as fh:
        return SlpProgram.from_text(fh.read())


def slp_from_poly(f):
    """Compile ``f`` to an SLP: repeated-squaring chains per variable, then a term sum."""
    ins = []
    fresh = iter(range(1 << 62))

    def new():
        return f"r{next(fresh)}"

    squares = {}
    for j in range(f.nvars):
        top = max((e[j] for _, e in f.terms), default=0).bit_length()
        chain = [f"x{j + 1}"]
        for _ in range(1, top):
            r = new()
            ins.append((r, "mul", (chain[-1], chain[-1])))
            chain.append(r)
        squares[j] = chain
    acc = None
    for c, e in f.terms:
        term = new()
        ins.append((term, "const", (c,)))
        for j, x in enumerate(e):
            for b in range(x.bit_length()):
                if x >> b & 1:
                    r = new()
                    ins.append((r, "mul", (term, squares[j][b])))
                    term = r
        if acc is None:
            acc = term
        else:
            r = new()
            ins.append((r, "add", (acc, term)))
            acc = r
    if acc is None:
        acc = new()
        ins.append((acc, "const", (0,)))
    return SlpProgram(f.nvars, ins, acc)


class SlpMbb(Mbb):
    """Black box interpreting an :class:`SlpProgram` over ``Z/mZ``."""

    def __init__(self, prog):
        super().__init__(prog.ninputs)
        self.prog = prog

    def _eval(self, m, theta):
        return self.prog.evaluate(theta, m)


def slp_mbb(prog):
    return SlpMbb(prog)


def as_mbb(obj):
    """Wrap a SparsePoly or SlpProgram; pass an Mbb through unchanged."""
    if isinstance(obj, Mbb):
        return obj
    if isinstance(obj, SparsePoly):
        return SparseMbb(obj)
    if isinstance(obj, SlpProgram):
        return SlpMbb(obj)
    raise TypeError(f"cannot build a black box from {type(obj).__name__}")
