"""Input checks shared by the algorithms, the estimators and the CLI."""

import numbers
import random

from .sparsepoly import SparsePoly


def check_random_state(seed):
    """Turn None, an int or a ``random.Random`` into a ``random.Random``."""
    if seed is None:
        return random.Random()
    if isinstance(seed, random.Random):
        return seed
    if isinstance(seed, numbers.Integral) and not isinstance(seed, bool):
        return random.Random(int(seed))
    raise TypeError(f"{seed!r} cannot seed a random.Random")


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return int(value)


def check_bounds(D, T, H, rigorous=False):
    return (
        check_positive_int(D, "degree bound D"),
        check_positive_int(T, "sparsity bound T"),
        check_positive_int(H, "height bound H"),
        bool(rigorous),
    )


def check_sparse_poly(f, name="polynomial", univariate=False):
    if not isinstance(f, SparsePoly):
        raise TypeError(f"{name} must be a SparsePoly, got {type(f).__name__}")
    if univariate and f.nvars != 1:
        raise ValueError(f"{name} must be univariate")
    return f
