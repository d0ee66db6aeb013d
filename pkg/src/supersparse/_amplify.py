"""Majority voting over independent randomized runs."""

import random

from .exceptions import AlgorithmFailed
from .sparsepoly import dumps


def spawn(rng, n):
    """``n`` independent generators seeded from ``rng``, drawn all at once."""
    return [random.Random(rng.getrandbits(64)) for _ in range(n)]


def majority(run, n):
    """Strict-majority result of ``run(0), ..., run(n-1)``.

    ``run`` returns a SparsePoly or None for FAIL.  Candidates are grouped by
    their canonical text.  Stops as soon as the outcome is decided, which
    gives the same answer as evaluating all ``n`` runs.
    """
    votes = {}
    polys = {}
    need = n // 2 + 1
    for i in range(n):
        f = run(i)
        if f is not None:
            key = dumps(f)
            votes[key] = votes.get(key, 0) + 1
            polys[key] = f
            if votes[key] >= need:
                return f
        left = n - i - 1
        if max(votes.values(), default=0) + left < need:
            break
    raise AlgorithmFailed("no strict majority among the candidates")
