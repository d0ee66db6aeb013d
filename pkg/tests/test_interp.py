import random

import pytest

import supersparse.interp as interp
from supersparse._amplify import majority, spawn
from supersparse.blackbox import slp_from_poly, slp_mbb, sparse_mbb
from supersparse.exceptions import AlgorithmFailed
from supersparse.interp import (
    InterpBounds,
    amplified_runs,
    clog2,
    embedding_k,
    interp_epsilon,
    interpolate_amplified,
    interpolate_mbb,
    interpolate_multivariate,
    reconstruct_terms,
    verify_mbb_equal,
)
from supersparse.modmath import PruTriple
from supersparse.sparsepoly import SparsePoly

from conftest import random_sparse

F1000 = SparsePoly([(3, 1000), (5, 0)])


def test_parameters():
    assert [clog2(n) for n in (1, 2, 3, 4, 5, 1024, 1025)] == [0, 1, 2, 2, 3, 10, 11]
    assert interp_epsilon(1) == interp_epsilon(2) == 1 / 9
    assert interp_epsilon(16) == 1 / 36
    assert embedding_k(7, 10, 10) == 2
    assert embedding_k(7, 49, 7) == 1
    assert embedding_k(7, 50, 7) == 2
    assert amplified_runs(1) == 34 and amplified_runs(3) == 100


def test_reconstruct_terms_example_and_rejections():
    assert reconstruct_terms([5], [33], [2], 3, 7, 1, 10, 24) == [(5, 5)]
    assert reconstruct_terms([14], [33], [2], 3, 7, 1, 10, 24) == []  # non-unit
    assert reconstruct_terms([5], [34], [2], 3, 7, 1, 10, 24) == []  # u - 1 not divisible by q^k
    assert reconstruct_terms([5], [33], [1], 3, 7, 1, 10, 24) == []  # wrong residue
    assert reconstruct_terms([5], [33], [2], 3, 7, 1, 5, 24) == []  # e >= D
    assert reconstruct_terms([5], [33], [2], 3, 7, 1, 10, 4) == []  # height
    # negative coefficient: -5 lifts from 44
    assert reconstruct_terms([44], [44 * 36 % 49], [2], 3, 7, 1, 10, 24) == [(-5, 5)]


def test_reconstruct_postconditions():
    rng = random.Random(31)
    q, k, p = 101, 2, 7
    M = q ** (2 * k)
    for _ in range(2000):
        support = [rng.randrange(p)]
        out = reconstruct_terms([rng.randrange(M)], [rng.randrange(M)], support, p, q, k, 10**4, 500)
        for c, e in out:
            assert e % p == support[0] and abs(c) <= 500


def test_zero_and_constant():
    for seed in range(5):
        assert interpolate_mbb(sparse_mbb(SparsePoly.zero()), (2**30, 8, 100), seed).is_zero()
        c = SparsePoly.constant(-77)
        assert interpolate_mbb(sparse_mbb(c), (1, 1, 100), seed) == c


def test_success_rate_small_example():
    wins = sum(interpolate_mbb(sparse_mbb(F1000), (1024, 2, 8), random.Random(s)) == F1000 for s in range(100))
    assert wins >= 60


def test_slp_box_interpolates():
    f = random_sparse(random.Random(3), 6, 2**30, 2**20)
    got = interpolate_mbb(slp_mbb(slp_from_poly(f)), (2**30, 6, 2**20), random.Random(1))
    assert got == f


def test_soundness_with_forced_collision_free_triple(monkeypatch):
    # exponents 1000, 7, 3 are distinct mod 11; 2 has order 11 mod 23
    f = SparsePoly([(3, 1000), (5, 7), (-2, 3)])
    monkeypatch.setattr(interp, "gen_triple", lambda *a, **k: PruTriple(11, 23, 2))
    trace = []
    assert interpolate_mbb(sparse_mbb(f), (1024, 4, 8), 0, trace) == f
    assert trace[0].support == 3 and trace[0].accepted == 3
    assert all(r.support == 0 for r in trace[1:])


def test_gen_triple_failure_propagates(monkeypatch):
    def boom(*a, **k):
        raise AlgorithmFailed("no prime")

    monkeypatch.setattr(interp, "gen_triple", boom)
    trace = []
    with pytest.raises(AlgorithmFailed):
        interpolate_mbb(sparse_mbb(F1000), (1024, 2, 8), 0, trace)
    assert trace[-1].cause == "gen_triple"


def test_statistical_success_and_probe_budget():
    rng = random.Random(32)
    wins = 0
    for _ in range(100):
        T = rng.randint(1, 32)
        D = 2 ** rng.randint(8, 40)
        H = 2 ** rng.randint(1, 64)
        f = random_sparse(rng, min(T, D), D, H)
        box = sparse_mbb(f)
        try:
            wins += interpolate_mbb(box, (D, T, H), random.Random(rng.getrandbits(64))) == f
        except AlgorithmFailed:
            pass
        assert box.probe_count <= 8 * T
    assert wins >= 55


def test_trace_records():
    trace = []
    interpolate_mbb(sparse_mbb(F1000), (1024, 8, 8), 5, trace)
    assert [r.iter for r in trace] == [1, 2, 3, 4]
    line = trace[0].line()
    assert line.startswith("TRACE iter=1 p=") and line.endswith("cause=-")
    fields = dict(kv.split("=") for kv in line.split()[1:])
    assert set(fields) == {"iter", "p", "q", "k", "support", "accepted", "rejected", "cause"}


def test_majority_tie_and_failures():
    a, b = SparsePoly.constant(1), SparsePoly.constant(2)
    with pytest.raises(AlgorithmFailed):
        majority(lambda i: a if i % 2 else b, 10)
    with pytest.raises(AlgorithmFailed):
        majority(lambda i: None, 5)
    assert majority(lambda i: a if i < 6 else b, 10) == a
    assert majority(lambda i: a, 1) == a


def test_majority_early_stop_agrees_with_full_vote():
    rng = random.Random(33)
    polys = [SparsePoly.constant(c) for c in range(3)]
    for _ in range(300):
        n = rng.randint(1, 15)
        outs = [rng.choice(polys + [None]) for _ in range(n)]
        counts = {}
        for f in outs:
            if f is not None:
                counts[f] = counts.get(f, 0) + 1
        winner = [f for f, c in counts.items() if 2 * c > n]
        if winner:
            assert majority(lambda i: outs[i], n) == winner[0]
        else:
            with pytest.raises(AlgorithmFailed):
                majority(lambda i: outs[i], n)


def test_spawn_is_deterministic():
    a = [r.random() for r in spawn(random.Random(4), 5)]
    b = [r.random() for r in spawn(random.Random(4), 5)]
    assert a == b and len(set(a)) == 5


def test_amplified_failure_rate():
    fails = 0
    for s in range(200):
        try:
            fails += interpolate_amplified(sparse_mbb(F1000), (1024, 2, 8), 3, random.Random(s)) != F1000
        except AlgorithmFailed:
            fails += 1
    assert fails <= 25


def test_amplified_traces_and_rho_check():
    traces = []
    got = interpolate_amplified(sparse_mbb(F1000), (1024, 2, 8), 1, 0, traces=traces)
    assert got == F1000 and 1 <= len(traces) <= 34
    with pytest.raises(ValueError):
        interpolate_amplified(sparse_mbb(F1000), (1024, 2, 8), 0)


def test_multivariate():
    rng = random.Random(34)
    f = random_sparse(rng, 5, 2**10, 2**16, 3)
    assert interpolate_multivariate(sparse_mbb(f), 2**10, 5, 2**16, rng=1) == f
    assert interpolate_multivariate(sparse_mbb(f), 2**10, 5, 2**16, rho=1, rng=2) == f


def test_verify_mbb_equal():
    rng = random.Random(35)
    for _ in range(20):
        f = random_sparse(rng, 4, 1000, 50)
        assert verify_mbb_equal(sparse_mbb(f), f, 1000, 50, 4, rng) == "equal"
    z = SparsePoly.zero()
    assert verify_mbb_equal(sparse_mbb(z), z, 10, 1, 1, rng) == "equal"
    f = random_sparse(rng, 4, 1000, 50)
    bad = f + SparsePoly([(1, 3)])
    hits = sum(verify_mbb_equal(sparse_mbb(f), bad, 1000, 51, 5, rng) == "not_equal" for _ in range(100))
    assert hits >= 95


def test_bad_bounds_rejected():
    with pytest.raises(ValueError):
        interpolate_mbb(sparse_mbb(F1000), (0, 2, 8))
    with pytest.raises(ValueError):
        interpolate_mbb(sparse_mbb(SparsePoly([(1, (1, 1))], 2)), (10, 2, 8))
    assert InterpBounds(1, 2, 3).rigorous is False
