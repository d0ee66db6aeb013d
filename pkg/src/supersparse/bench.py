"""Scaling sweeps for the interpolation loop (CSV rows ``suite,param,wall_ns,probes,success``)."""

import gc
import random
import statistics
import time

from .blackbox import SparseMbb
from .exceptions import AlgorithmFailed
from .interp import InterpBounds, interpolate_mbb
from .sparsepoly import SparsePoly

SWEEP = (2**16, 2**32, 2**64, 2**128)
SUITES = {
    # suite -> list of (param, D, T, H)
    "logD": [(D, D, 16, 2**32) for D in SWEEP],
    "logH": [(H, 2**32, 16, H) for H in SWEEP],
    "T": [(T, 2**32, T, 2**32) for T in (2, 4, 8, 16, 32)],
}
HEADER = "suite,param,wall_ns,probes,success"


def random_poly(rng, T, D, H):
    """``T`` terms with distinct exponents below ``D`` and coefficients in ``[-H, H] \\ {0}``."""
    exps = set()
    while len(exps) < T:
        exps.add(rng.randrange(D))
    return SparsePoly([(rng.choice((-1, 1)) * rng.randint(1, H), e) for e in sorted(exps)])


def measure(D, T, H, rng, reps=3, root_method="chirp"):
    """Median wall time, max probe count and all-success flag over ``reps`` runs."""
    walls, probes, ok = [], [], True
    for _ in range(reps):
        f = random_poly(rng, T, D, H)
        mbb = SparseMbb(f)
        run_rng = random.Random(rng.getrandbits(64))
        # timed with the collector off, as timeit does
        gc.collect()
        gc.disable()
        t0 = time.perf_counter_ns()
        try:
            got = interpolate_mbb(mbb, InterpBounds(D, T, H), run_rng, root_method=root_method)
        except AlgorithmFailed:
            got = None
        finally:
            walls.append(time.perf_counter_ns() - t0)
            gc.enable()
        probes.append(mbb.probe_count)
        ok = ok and got == f
    return int(statistics.median(walls)), max(probes), ok


def run_suite(suite, seed=0, reps=3, root_method="chirp"):
    """Yield ``(suite, param, wall_ns, probes, success)`` rows."""
    rng = random.Random(seed)
    for param, D, T, H in SUITES[suite]:
        wall, probes, ok = measure(D, T, H, rng, reps, root_method)
        yield suite, param, wall, probes, int(ok)


def format_row(row):
    return ",".join(map(str, row))
