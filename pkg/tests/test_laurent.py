"""Laurent ring, quotient algebras, and the g = 1 Smith normal form.

Derived expected values are computed first by independent oracles: subgroup
index by breadth-first coset enumeration keyed on exact fractional parts
(no Hermite form involved), monomial counts by explicit enumeration.
"""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alexmod import linalg
from alexmod.errors import ArityMismatch, MultivariateInput, SingularSubgroup
from alexmod.laurent import (LaurentPoly, SubgroupSpec, augment, laurent_snf,
                             quotient_algebra, reduce_mod, to_unipoly, unit_normalize)
from alexmod import unipoly

from conftest import lp, random_laurent, tvar


# ---------------------------------------------------------------------------
# oracles


def _solve_fractions(mat, vec):
    """Tiny self-contained Gaussian solver used only by the oracles here."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(vec[i])] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                c = aug[i][col]
                aug[i] = [x - c * y for x, y in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def oracle_subgroup_index(basis):
    """|Z^g / lattice| by BFS, cosets keyed on frac(B^-1 v)."""
    g = len(basis)

    def key(v):
        coords = _solve_fractions(basis, v)
        return tuple(c - c.__floor__() for c in coords)

    seen = {key([0] * g)}
    frontier = [[0] * g]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(g):
                for sign in (1, -1):
                    w = v[:]
                    w[i] += sign
                    k = key(w)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(w)
        frontier = nxt
    return len(seen)


def oracle_monomial_count(g, m):
    """#monomials of total degree < m in g variables, by brute force."""
    return sum(1 for alpha in product(range(m), repeat=g) if sum(alpha) < m)


# ---------------------------------------------------------------------------
# ring basics


def test_augment_examples():
    assert augment(lp({(1,): 2}) * lp({(-1,): 1}) - 3) == -1
    assert augment(tvar() - 1) == 0
    assert augment(lp({2: 1, 1: -1, 0: 1})) == 1


def test_ring_axioms_random(rng):
    for _ in range(30):
        nvars = rng.randint(1, 3)
        a = random_laurent(rng, nvars)
        b = random_laurent(rng, nvars)
        c = random_laurent(rng, nvars)
        assert a * b == b * a
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert augment(a * b) == augment(a) * augment(b)


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        lp({0: 1}, 1) * lp({(0, 0): 1}, 2)


def test_serialization_roundtrip(rng):
    for _ in range(10):
        p = random_laurent(rng, 2)
        assert LaurentPoly.from_obj(p.to_obj(), 2) == p


def test_unit_normalize():
    p = lp({3: -2, 4: 2})  # -2 t^3 (1 - t)
    norm, unit = unit_normalize(p)
    assert norm == tvar() - 1
    assert unit * norm == p


# ---------------------------------------------------------------------------
# subgroups and quotient algebras


def test_subgroup_rejects_singular():
    with pytest.raises(SingularSubgroup):
        SubgroupSpec([[1, 1], [1, 1]])


def test_quotient_basis_univariate():
    q = quotient_algebra(SubgroupSpec.full(1), 3)
    assert q.dimension == 3
    assert q.basis == [((0,), (0,)), ((0,), (1,)), ((0,), (2,))]
    assert [q.basis_lift(i) for i in range(3)] == [
        lp({0: 1}),
        tvar() - 1,
        (tvar() - 1) * (tvar() - 1),
    ]


def test_quotient_basis_cosets():
    q = quotient_algebra(SubgroupSpec.cyclic(2), 1)
    assert q.dimension == 2
    assert [q.basis_lift(i) for i in range(2)] == [lp({0: 1}), tvar()]


def test_quotient_dim_full_g2():
    q = quotient_algebra(SubgroupSpec.full(2), 2)
    assert q.dimension == oracle_monomial_count(2, 2) == 3


@pytest.mark.parametrize("basis,m", [
    ([[1]], 3),
    ([[2]], 2),
    ([[6]], 1),
    ([[2, 0], [0, 2]], 2),
    ([[1, 1], [0, 2]], 3),
    ([[2, 1, 0], [0, 1, 0], [1, 1, 2]], 2),
])
def test_quotient_dims_against_oracles(basis, m):
    h = SubgroupSpec(basis)
    q = quotient_algebra(h, m)
    g = len(basis)
    assert q.dimension == oracle_subgroup_index(basis) * oracle_monomial_count(g, m)


def test_reduce_examples():
    q2 = quotient_algebra(SubgroupSpec.full(1), 2)
    assert q2.reduce(lp({2: 1})) == [1, 2]
    assert q2.reduce(lp({-1: 1})) == [1, -1]
    q1 = quotient_algebra(SubgroupSpec.full(1), 1)
    assert q1.reduce(lp({2: 1, 1: -1, 0: 1})) == [1]
    assert reduce_mod(lp({0: 1}), q2) == q2.one_vector()


def test_reduce_is_multiplicative(rng):
    for basis, m in [([[1]], 3), ([[2]], 2), ([[1, 1], [0, 2]], 2)]:
        h = SubgroupSpec(basis)
        q = quotient_algebra(h, m)
        g = len(basis)
        for _ in range(8):
            a = random_laurent(rng, g, 2)
            b = random_laurent(rng, g, 2)
            lhs = q.reduce(a * b)
            rhs = q.multiply_coords(q.reduce(a), q.reduce(b))
            assert lhs == rhs


def test_algebra_commutative_unital(rng):
    q = quotient_algebra(SubgroupSpec([[1, 1], [0, 2]]), 2)
    one = q.one_vector()
    for _ in range(6):
        u = q.reduce(random_laurent(rng, 2, 2))
        v = q.reduce(random_laurent(rng, 2, 2))
        assert q.multiply_coords(u, v) == q.multiply_coords(v, u)
        assert q.multiply_coords(one, u) == u


def test_subgroup_elements_unipotent(rng):
    for basis, m in [([[2]], 3), ([[2, 0], [1, 3]], 2)]:
        h = SubgroupSpec(basis)
        q = quotient_algebra(h, m)
        g = len(basis)
        for _ in range(5):
            coeffs = [rng.randint(-2, 2) for _ in range(g)]
            gamma = [sum(basis[i][j] * coeffs[j] for j in range(g)) for i in range(g)]
            mat = q.mult_matrix(LaurentPoly.monomial(tuple(gamma)))
            x = linalg.mat_sub(mat, linalg.identity(q.dimension))
            assert linalg.is_zero_matrix(linalg.mat_pow(x, m))


def test_truncation_and_subgroup_projections_commute():
    h1 = SubgroupSpec.cyclic(6)
    h2 = SubgroupSpec.cyclic(12)
    q2_3 = quotient_algebra(h2, 3)
    q2_1 = quotient_algebra(h2, 1)
    q1_3 = quotient_algebra(h1, 3)
    q1_1 = quotient_algebra(h1, 1)
    path_a = linalg.matmul(q1_3.truncation_projection(q1_1), q2_3.subgroup_projection(q1_3))
    path_b = linalg.matmul(q2_1.subgroup_projection(q1_1), q2_3.truncation_projection(q2_1))
    assert linalg.mat_eq(path_a, path_b)


# ---------------------------------------------------------------------------
# Smith normal form, g = 1


def test_snf_examples():
    u, d, v = laurent_snf([[tvar() - 1]])
    assert d[0][0] == tvar() - 1

    one = LaurentPoly.one(1)
    zero = LaurentPoly.zero(1)
    u, d, v = laurent_snf([[tvar(), one], [zero, tvar() - 1]])
    assert d[0][0] == one
    assert d[1][1] == tvar() - 1

    u, d, v = laurent_snf([[zero, zero], [zero, zero]])
    assert all(p.is_zero() for row in d for p in row)


def test_snf_rejects_multivariate():
    with pytest.raises(MultivariateInput):
        laurent_snf([[LaurentPoly.one(2)]])


def test_snf_random_divisibility(rng):
    for _ in range(25):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 3)
        mat = [[random_laurent(rng, 1, 2) for _ in range(cols)] for _ in range(rows)]
        _, d, _ = laurent_snf(mat)
        diag = []
        for k in range(min(rows, cols)):
            if not d[k][k].is_zero():
                diag.append(to_unipoly(d[k][k])[0])
        for a, b in zip(diag, diag[1:]):
            assert unipoly.divides(a, b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5),
       st.lists(st.integers(-4, 4), min_size=2, max_size=5))
def test_augment_hom_property(c1, c2):
    p = LaurentPoly(1, {(i - 2,): Fraction(c) for i, c in enumerate(c1)})
    q = LaurentPoly(1, {(i - 1,): Fraction(c) for i, c in enumerate(c2)})
    assert augment(p * q) == augment(p) * augment(q)
    assert augment(p + q) == augment(p) + augment(q)
