import random
from fractions import Fraction

from alexmod import _ratcore_py, linalg


def rand_mat(rng, m, n, bound=9):
    return [[Fraction(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(n)] for _ in range(m)]


def test_rref_hand():
    m = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    red, piv = linalg.rref(m)
    assert piv == (0,)
    assert red[0] == [Fraction(1), Fraction(2)]
    assert red[1] == [Fraction(0), Fraction(0)]


def test_rank_and_nullspace(rng):
    for _ in range(25):
        m = rand_mat(rng, rng.randint(1, 5), rng.randint(1, 5))
        ns = linalg.nullspace(m)
        assert linalg.rank(m) + len(ns) == len(m[0])
        for v in ns:
            assert all(x == 0 for x in linalg.mat_vec(m, v))


def test_solve_consistent(rng):
    for _ in range(20):
        n = rng.randint(1, 4)
        a = rand_mat(rng, rng.randint(1, 4), n)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        b = linalg.mat_vec(a, x)
        sol = linalg.solve(a, b)
        assert sol is not None
        assert linalg.mat_vec(a, sol) == b


def test_solve_inconsistent():
    a = [[Fraction(1)], [Fraction(1)]]
    assert linalg.solve(a, [Fraction(0), Fraction(1)]) is None


def test_inverse_roundtrip(rng):
    for _ in range(10):
        n = rng.randint(1, 4)
        a = rand_mat(rng, n, n)
        inv = linalg.inverse(a)
        if inv is None:
            assert linalg.rank(a) < n
        else:
            assert linalg.mat_eq(linalg.matmul(a, inv), linalg.identity(n))


def test_span_and_intersection():
    f = Fraction
    sp = linalg.Span(3)
    assert sp.add([f(1), f(0), f(0)])
    assert sp.add([f(1), f(1), f(0)])
    assert not sp.add([f(3), f(2), f(0)])
    assert sp.contains([f(0), f(5), f(0)])
    a = [[f(1), f(0), f(0)], [f(0), f(1), f(0)]]
    b = [[f(0), f(1), f(0)], [f(0), f(0), f(1)]]
    inter = linalg.intersect_subspaces(a, b, 3)
    assert len(inter) == 1
    assert inter[0][1] != 0 and inter[0][0] == 0 and inter[0][2] == 0


def test_closure_under():
    f = Fraction
    shift = [[f(0), f(0)], [f(1), f(0)]]
    sp = linalg.closure_under([[f(1), f(0)]], [shift], 2)
    assert sp.dim == 2


def test_backend_parity(rng):
    # the compiled and pure kernels must agree entry for entry
    for _ in range(15):
        m = rand_mat(rng, rng.randint(1, 5), rng.randint(1, 6))
        got = linalg.rref([row[:] for row in m])
        ref = _ratcore_py.rref([row[:] for row in m])
        assert got[1] == ref[1]
        assert got[0] == ref[0]
