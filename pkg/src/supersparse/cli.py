"""Command-line interface.

Exit codes: 0 success (or accept), 1 malformed input or usage error,
2 algorithm FAIL, 3 verification reject.
"""

import argparse
import io
import random
import sys

from . import bench
from .blackbox import KroneckerMbb, SlpProgram, SparseMbb, SlpMbb
from .division import bounded_sparsity_division, exact_division, verify_product
from .exceptions import AlgorithmFailed, DegreeBoundViolated, FormatError
from .interp import InterpBounds, interpolate_amplified, interpolate_mbb
from .modmath import PruTriple, gen_triple, is_valid_triple, lift_pru
from .sparsepoly import dumps, kronecker, loads, naive_mul, reduce_binomial, unkronecker

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_REJECT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_INPUT)


def big_int(text):
    """Integer literal, also accepting ``2^k`` and ``2**k``."""
    t = text.replace("**", "^")
    if "^" in t:
        base, _, exp = t.partition("^")
        return int(base, 0) ** int(exp, 0)
    return int(t, 0)


def _globals():
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=big_int, default=argparse.SUPPRESS, help="64-bit seed (default 0)")
    g.add_argument("--rho", type=int, default=argparse.SUPPRESS, help="confidence parameter")
    g.add_argument("--rigorous", action="store_true", default=argparse.SUPPRESS)
    g.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    return g


def build_parser():
    common = _globals()
    p = _Parser(prog="supersparse", parents=[common], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    s = cmd("interpolate", "interpolate an SPOLY or SLP black box")
    s.add_argument("input")
    s.add_argument("-D", type=big_int, required=True, help="degree bound (per variable)")
    s.add_argument("-T", type=big_int, required=True, help="sparsity bound")
    s.add_argument("-H", type=big_int, required=True, help="height bound")
    s.add_argument("--root-method", default="auto", choices=("auto", "chirp", "gcd"))
    s.add_argument("-o", "--output")

    s = cmd("divide", "exact quotient f/g")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("-T", type=big_int, help="run the bounded-sparsity algorithm with this bound")
    s.add_argument("-o", "--output")

    s = cmd("verify", "Monte Carlo check of f == g*h")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("h")

    s = cmd("mul", "exact product")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("-o", "--output")

    s = cmd("reduce", "f mod x^p - 1")
    s.add_argument("f")
    s.add_argument("-p", type=big_int, required=True)
    s.add_argument("-o", "--output")

    s = cmd("kronecker", "multivariate to univariate")
    s.add_argument("f")
    s.add_argument("-D", type=big_int, required=True)
    s.add_argument("-o", "--output")

    s = cmd("unkronecker", "univariate to multivariate")
    s.add_argument("f")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-D", type=big_int, required=True)
    s.add_argument("-o", "--output")

    s = cmd("gen-triple", "random (p, q, omega)")
    s.add_argument("--lambda", dest="lam", type=big_int, required=True)
    s.add_argument("--epsilon", type=float, default=1 / 9)

    s = cmd("lift-pru", "lift omega to a p-th root of unity mod q^k")
    s.add_argument("p", type=big_int)
    s.add_argument("q", type=big_int)
    s.add_argument("omega", type=big_int)
    s.add_argument("-k", type=int, required=True)

    s = cmd("bench", "scaling sweep, CSV on stdout")
    s.add_argument("suite", choices=("logD", "logH", "T", "all"))
    s.add_argument("--reps", type=int, default=3)
    s.add_argument("--root-method", default="chirp", choices=("auto", "chirp", "gcd"))
    s.add_argument("-o", "--output")
    return p


# -- io helpers --------------------------------------------------------------------


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_poly(path):
    return loads(_read_text(path))


def _read_box(path):
    text = _read_text(path)
    head = next((ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), [])
    if head[:1] == ["SLP"]:
        return SlpMbb(SlpProgram.from_text(text))
    return SparseMbb(loads(text))


def _emit(text, path):
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _err(*parts):
    print(*parts, file=sys.stderr)


# -- commands ----------------------------------------------------------------------


def cmd_interpolate(args, rng):
    if min(args.D, args.T, args.H) < 1:
        raise UsageError("bounds must be positive")
    mbb = _read_box(args.input)
    n = mbb.nvars
    uni = mbb if n == 1 else KroneckerMbb(mbb, args.D)
    bounds = InterpBounds(args.D**n, args.T, args.H, args.rigorous)
    try:
        if args.rho is None:
            trace = []
            try:
                f = interpolate_mbb(uni, bounds, rng, trace, args.root_method)
            finally:
                for rec in trace:
                    _err(rec.line())
        else:
            traces = []
            try:
                f = interpolate_amplified(uni, bounds, args.rho, rng, args.root_method, traces)
            finally:
                _err(f"RUNS {len(traces)}")
                if args.verbose:
                    for i, tr in enumerate(traces):
                        for rec in tr or ():
                            _err(rec.line().replace("TRACE ", f"TRACE run={i} ", 1))
    finally:
        _err(f"PROBES {uni.probe_count}")
    if n > 1:
        f = unkronecker(f, n, args.D)
    _emit(dumps(f), args.output)
    return EXIT_OK


def cmd_divide(args, rng):
    f, g = _read_poly(args.f), _read_poly(args.g)
    if g.is_zero():
        raise UsageError("divisor is the zero polynomial")
    if f.nvars != g.nvars:
        raise UsageError("f and g have different numbers of variables")
    n = f.nvars
    D = f.maxdeg() + 1
    fu, gu = (f, g) if n == 1 else (kronecker(f, D), kronecker(g, D))
    if args.T is not None:
        trace = []
        h = bounded_sparsity_division(fu, gu, args.T, rng, trace)
        if args.verbose:
            for rec in trace:
                _err(rec.line())
    else:
        log = []
        try:
            h = exact_division(fu, gu, 4 if args.rho is None else args.rho, rng, log)
        finally:
            if args.verbose:
                for T, outcome in log:
                    _err(f"LEVEL T={T} outcome={outcome}")
    if n > 1:
        h = unkronecker(h, n, D)
    _emit(dumps(h), args.output)
    return EXIT_OK


def cmd_verify(args, rng):
    f, g, h = (_read_poly(x) for x in (args.f, args.g, args.h))
    if not f.nvars == g.nvars == h.nvars:
        raise UsageError("inputs have different numbers of variables")
    if f.nvars > 1:
        D = max(f.maxdeg(), g.maxdeg() + h.maxdeg()) + 1
        f, g, h = (kronecker(x, D) for x in (f, g, h))
    log = []
    verdict = verify_product(f, g, h, 10 if args.rho is None else args.rho, rng, log)
    if args.verbose:
        for i, (p, q) in enumerate(log):
            _err(f"TRIAL {i} p={p} q={q}")
    print(verdict)
    return EXIT_OK if verdict == "accept" else EXIT_REJECT


def cmd_mul(args, rng):
    f, g = _read_poly(args.f), _read_poly(args.g)
    if f.nvars != g.nvars:
        raise UsageError("f and g have different numbers of variables")
    _emit(dumps(naive_mul(f, g)), args.output)
    return EXIT_OK


def cmd_reduce(args, rng):
    f = _read_poly(args.f)
    if f.nvars != 1 or args.p < 1:
        raise UsageError("reduce needs a univariate polynomial and p >= 1")
    _emit(dumps(reduce_binomial(f, args.p)), args.output)
    return EXIT_OK


def cmd_kronecker(args, rng):
    if args.D < 1:
        raise UsageError("D must be positive")
    _emit(dumps(kronecker(_read_poly(args.f), args.D)), args.output)
    return EXIT_OK


def cmd_unkronecker(args, rng):
    f = _read_poly(args.f)
    if f.nvars != 1 or args.n < 1 or args.D < 1:
        raise UsageError("unkronecker needs a univariate polynomial, n >= 1 and D >= 1")
    _emit(dumps(unkronecker(f, args.n, args.D)), args.output)
    return EXIT_OK


def cmd_gen_triple(args, rng):
    if args.lam < 2 or not 0 < args.epsilon < 1:
        raise UsageError("need lambda >= 2 and 0 < epsilon < 1")
    try:
        p, q, w = gen_triple(args.lam, args.epsilon, args.rigorous, rng)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(p, q, w)
    return EXIT_OK


def cmd_lift_pru(args, rng):
    triple = PruTriple(args.p, args.q, args.omega)
    if args.k < 1 or not is_valid_triple(triple):
        raise UsageError("not a valid (p, q, omega) triple or k < 1")
    print(lift_pru(triple, args.k))
    return EXIT_OK


def cmd_bench(args, rng):
    suites = ("logD", "logH", "T") if args.suite == "all" else (args.suite,)
    buf = io.StringIO()
    buf.write(bench.HEADER + "\n")
    for s in suites:
        for row in bench.run_suite(s, args.seed, args.reps, args.root_method):
            buf.write(bench.format_row(row) + "\n")
    _emit(buf.getvalue(), args.output)
    return EXIT_OK


COMMANDS = {
    "interpolate": cmd_interpolate,
    "divide": cmd_divide,
    "verify": cmd_verify,
    "mul": cmd_mul,
    "reduce": cmd_reduce,
    "kronecker": cmd_kronecker,
    "unkronecker": cmd_unkronecker,
    "gen-triple": cmd_gen_triple,
    "lift-pru": cmd_lift_pru,
    "bench": cmd_bench,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # usage errors exit 1 (see _Parser.error); --help exits 0
        return exc.code
    for name, default in (("seed", 0), ("rho", None), ("rigorous", False), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.rho is not None and args.rho < 1:
        _err("supersparse: error: --rho must be at least 1")
        return EXIT_INPUT
    rng = random.Random(args.seed)
    try:
        return COMMANDS[args.cmd](args, rng)
    except (FormatError, DegreeBoundViolated, UsageError, ZeroDivisionError) as exc:
        _err(f"supersparse: error: {exc}")
        return EXIT_INPUT
    except AlgorithmFailed as exc:
        _err(f"supersparse: FAIL: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
