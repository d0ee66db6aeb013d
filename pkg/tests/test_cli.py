import subprocess
import sys

import pytest

from supersparse.cli import big_int, main
from supersparse.sparsepoly import SparsePoly, dumps, loads, naive_mul

SLP_X2M1 = "SLP 1 1\na = mul x1 x1\nb = const 1\nc = sub a b\nout c\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_big_int():
    assert big_int("2^40") == big_int("2**40") == 2**40
    assert big_int("17") == 17 and big_int("0x10") == 16


def test_interpolate_slp(capsys, files):
    path = files("f.slp", SLP_X2M1)
    code, out, err = run(capsys, "interpolate", path, "-D", 4, "-T", 2, "-H", 2, "--seed", 7)
    assert code == 0
    assert loads(out) == SparsePoly([(-1, 0), (1, 2)])
    lines = err.splitlines()
    assert lines[-1].startswith("PROBES ") and int(lines[-1].split()[1]) <= 16
    traces = [ln for ln in lines if ln.startswith("TRACE")]
    assert len(traces) == 2
    for ln in traces:
        fields = dict(kv.split("=") for kv in ln.split()[1:])
        assert int(fields["iter"]) >= 1 and fields["cause"]


def test_interpolate_is_reproducible(capsys, files, tmp_path):
    path = files("f.spoly", "SPOLY 1 1\n3 1000\n5 0\n")
    outs = []
    for _ in range(2):
        code, out, err = run(capsys, "--seed", 11, "interpolate", path, "-D", "2^10", "-T", 2, "-H", 8)
        outs.append((code, out, err))
    assert outs[0] == outs[1] and outs[0][0] == 0
    o = tmp_path / "out.spoly"
    run(capsys, "interpolate", path, "-D", 1024, "-T", 2, "-H", 8, "--seed", 11, "-o", o)
    assert o.read_text() == outs[0][1]


def test_interpolate_amplified(capsys, files):
    path = files("f.spoly", "SPOLY 1 1\n3 1000\n5 0\n")
    code, out, err = run(capsys, "interpolate", path, "-D", 1024, "-T", 2, "-H", 8, "--rho", 1, "--verbose")
    assert code == 0 and out == "SPOLY 1 1\n5 0\n3 1000\n"
    assert any(ln.startswith("RUNS ") for ln in err.splitlines())
    assert any(ln.startswith("TRACE run=0 ") for ln in err.splitlines())


def test_interpolate_empty_and_multivariate(capsys, files):
    code, out, _ = run(capsys, "interpolate", files("z.spoly", "SPOLY 1 1\n"), "-D", 8, "-T", 3, "-H", 5)
    assert code == 0 and out == "SPOLY 1 1\n"
    f = "SPOLY 1 2\n4 3 1\n-2 0 5\n"
    code, out, _ = run(capsys, "interpolate", files("m.spoly", f), "-D", 8, "-T", 2, "-H", 5, "--seed", 2)
    assert code == 0 and loads(out) == loads(f)


def test_interpolate_errors(capsys, files):
    path = files("f.spoly", "SPOLY 1 1\n3 1000\n")
    assert run(capsys, "interpolate", path, "-D", 4, "-H", 2)[0] == 1
    assert run(capsys, "interpolate", files("bad.spoly", "SPOLY 1 1\n0 3\n"), "-D", 4, "-T", 1, "-H", 2)[0] == 1
    assert run(capsys, "interpolate", files("bad.slp", "SLP 1 1\nout y\n"), "-D", 4, "-T", 1, "-H", 2)[0] == 1
    assert run(capsys, "interpolate", "/nonexistent/x", "-D", 4, "-T", 1, "-H", 2)[0] == 1
    assert run(capsys, "interpolate", path, "-D", 0, "-T", 1, "-H", 2)[0] == 1
    assert run(capsys, "--rho", 0, "interpolate", path, "-D", 4, "-T", 1, "-H", 2)[0] == 1
    assert run(capsys, "nosuchcommand")[0] == 1


def test_interpolate_fail_exit_code(capsys, files, monkeypatch):
    import supersparse.interp as interp
    from supersparse.exceptions import AlgorithmFailed

    def boom(*a, **k):
        raise AlgorithmFailed("forced")

    monkeypatch.setattr(interp, "gen_triple", boom)
    path = files("f.spoly", "SPOLY 1 1\n3 1000\n")
    code, out, err = run(capsys, "interpolate", path, "-D", 1024, "-T", 1, "-H", 3)
    assert code == 2 and out == "" and "PROBES 0" in err


def test_divide(capsys, files):
    f = files("f.spoly", "SPOLY 1 1\n1 2\n-1 0\n")
    g = files("g.spoly", "SPOLY 1 1\n1 1\n-1 0\n")
    code, out, err = run(capsys, "divide", f, g, "--verbose")
    assert code == 0 and out == "SPOLY 1 1\n1 0\n1 1\n"
    assert err.splitlines()[-1].startswith("LEVEL T=") and err.splitlines()[-1].endswith("outcome=accept")
    code, out, _ = run(capsys, "divide", f, g, "-T", 2, "--seed", 1)
    assert code == 0 and out == "SPOLY 1 1\n1 0\n1 1\n"
    big = naive_mul(SparsePoly([(1, 100), (1, 0)]), SparsePoly([(1, 50), (2, 1), (3, 0)]))
    code, out, _ = run(capsys, "divide", files("b.spoly", dumps(big)), files("c.spoly", "SPOLY 1 1\n1 100\n1 0\n"))
    assert code == 0 and out == "SPOLY 1 1\n3 0\n2 1\n1 50\n"
    assert run(capsys, "divide", f, files("z.spoly", "SPOLY 1 1\n"))[0] == 1


def test_verify(capsys, files):
    g = files("g.spoly", "SPOLY 1 1\n1 100\n1 0\n")
    h = files("h.spoly", "SPOLY 1 1\n1 50\n2 1\n3 0\n")
    f = files("f.spoly", dumps(naive_mul(loads(open(g).read()), loads(open(h).read()))))
    bad = files("bad.spoly", dumps(loads(open(f).read()) + SparsePoly([(1, 5)])))
    code, out, err = run(capsys, "verify", f, g, h, "--verbose")
    assert (code, out) == (0, "accept\n") and len(err.splitlines()) == 10
    assert run(capsys, "verify", bad, g, h)[:2] == (3, "reject\n")
    z = files("z.spoly", "SPOLY 1 1\n")
    assert run(capsys, "verify", z, z, z)[:2] == (0, "accept\n")
    assert run(capsys, "verify", files("x.spoly", "SPOLY 1 1\n3\n"), g, h)[0] == 1


def test_arith_commands(capsys, files):
    f = files("f.spoly", "SPOLY 1 1\n3 1000\n5 0\n")
    assert run(capsys, "reduce", f, "-p", 7)[:2] == (0, "SPOLY 1 1\n5 0\n3 6\n")
    m = files("m.spoly", "SPOLY 1 2\n2 2 1\n7 0 2\n")
    code, out, _ = run(capsys, "kronecker", m, "-D", 10)
    assert (code, out) == (0, "SPOLY 1 1\n2 12\n7 20\n")
    u = files("u.spoly", out)
    assert run(capsys, "unkronecker", u, "-n", 2, "-D", 10)[1] == "SPOLY 1 2\n7 0 2\n2 2 1\n"
    a = files("a.spoly", "SPOLY 1 1\n1 1\n-1 0\n")
    b = files("b.spoly", "SPOLY 1 1\n1 1\n1 0\n")
    assert run(capsys, "mul", a, b)[1] == "SPOLY 1 1\n-1 0\n1 2\n"
    assert run(capsys, "kronecker", m, "-D", 2)[0] == 1


def test_triple_commands(capsys):
    code, out, _ = run(capsys, "gen-triple", "--lambda", 2, "--seed", 3)
    p, q, w = map(int, out.split())
    assert code == 0 and p == 3 and pow(w, 3, q) == 1 and w != 1
    assert run(capsys, "gen-triple", "--lambda", 1000, "--seed", 3) == run(capsys, "gen-triple", "--lambda", 1000, "--seed", 3)
    assert run(capsys, "lift-pru", 3, 7, 2, "-k", 2)[:2] == (0, "30\n")
    assert run(capsys, "lift-pru", 3, 7, 3, "-k", 2)[0] == 1
    assert run(capsys, "gen-triple", "--lambda", 1000, "--rigorous")[0] == 1


def test_bench_shape(capsys):
    code, out, _ = run(capsys, "bench", "logD", "--reps", 1)
    rows = out.splitlines()
    assert code == 0 and rows[0] == "suite,param,wall_ns,probes,success" and len(rows) == 5
    for row, D in zip(rows[1:], (2**16, 2**32, 2**64, 2**128)):
        suite, param, wall, probes, ok = row.split(",")
        assert suite == "logD" and int(param) == D and int(wall) > 0
        assert int(probes) <= 8 * 16 and ok in "01"


def test_module_entry_point(tmp_path):
    path = tmp_path / "f.slp"
    path.write_text(SLP_X2M1)
    res = subprocess.run(
        [sys.executable, "-m", "supersparse", "interpolate", str(path), "-D", "4", "-T", "2", "-H", "2", "--seed", "7"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout == "SPOLY 1 1\n-1 0\n1 2\n"
