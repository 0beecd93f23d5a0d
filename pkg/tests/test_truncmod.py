"""Truncated symmetric algebras R_m, their duals, and the deck action."""

from fractions import Fraction

import pytest

from alexmod import linalg as la
from alexmod import truncmod as tm
from alexmod.errors import BadOrder, MultivariateInput
from alexmod.laurent import LaurentPoly, SubgroupSpec, quotient_algebra

from conftest import frac_mat


def test_dimension_formula():
    for g in (1, 2, 3):
        for m in (1, 2, 3, 4):
            mod = tm.trunc_module(g, m)
            # C(g+m-1, g) by direct enumeration over the stored basis
            assert mod.dim == len(mod.basis)
            assert all(sum(a) < m for a in mod.basis)


def test_rm_action_examples():
    assert tm.rm_action([1], tm.trunc_module(1, 2)) == frac_mat([[1, 0], [1, 1]])
    col0 = [row[0] for row in tm.rm_action([1], tm.trunc_module(1, 3))]
    assert col0 == [1, 1, Fraction(1, 2)]
    assert tm.rm_action([7], tm.trunc_module(1, 1)) == frac_mat([[1]])


def test_rm_action_homomorphism(rng):
    for _ in range(40):
        g = rng.randint(1, 3)
        m = rng.randint(1, 4)
        mod = tm.trunc_module(g, m)
        a = [rng.randint(-3, 3) for _ in range(g)]
        b = [rng.randint(-3, 3) for _ in range(g)]
        ab = [x + y for x, y in zip(a, b)]
        assert la.mat_eq(tm.rm_action(ab, mod),
                         la.matmul(tm.rm_action(a, mod), tm.rm_action(b, mod)))
        assert la.mat_eq(tm.rm_action([0] * g, mod), la.identity(mod.dim))


def test_dual_action_is_transpose_and_pairing_adjoint(rng):
    g, m = 2, 3
    rmod = tm.trunc_module(g, m)
    dual = tm.trunc_module(g, m, tm.DUAL_VARIANT)
    for _ in range(10):
        gamma = [rng.randint(-2, 2) for _ in range(g)]
        a = tm.rm_action(gamma, rmod)
        ad = tm.rm_action(gamma, dual)
        assert la.mat_eq(ad, la.transpose(a))


def test_iso_examples_and_triangularity():
    iso = tm.iso_rmodm_to_rm(1, 3)
    # (t-1) -> s + s^2/2, (t-1)^2 -> s^2
    assert [row[1] for row in iso] == [0, 1, Fraction(1, 2)]
    assert [row[2] for row in iso] == [0, 0, 1]
    assert tm.iso_rmodm_to_rm(1, 1) == frac_mat([[1]])
    iso22 = tm.iso_rmodm_to_rm(2, 2)
    # (t_i - 1) -> s_i on the degree-1 block
    assert la.mat_eq(iso22, la.identity(3))
    for g in (1, 2, 3):
        for m in (1, 2, 3, 4):
            mat = tm.iso_rmodm_to_rm(g, m)
            n = len(mat)
            for i in range(n):
                assert mat[i][i] == 1
                for j in range(i + 1, n):
                    assert mat[i][j] == 0  # upper part vanishes: triangular


def test_iso_intertwines_actions(rng):
    for g, m in [(1, 3), (2, 2), (2, 3), (3, 2)]:
        iso = tm.iso_rmodm_to_rm(g, m)
        q = quotient_algebra(SubgroupSpec.full(g), m)
        mod = tm.trunc_module(g, m)
        for _ in range(5):
            gamma = tuple(rng.randint(-2, 2) for _ in range(g))
            mult = q.mult_matrix(LaurentPoly.monomial(gamma))
            assert la.mat_eq(la.matmul(iso, mult),
                             la.matmul(tm.rm_action(gamma, mod), iso))


def test_log_operator_examples():
    q2 = quotient_algebra(SubgroupSpec.full(1), 2)
    log_t = tm.log_operator([1], q2)
    assert log_t == frac_mat([[0, 0], [1, 0]])
    q3 = quotient_algebra(SubgroupSpec.full(1), 3)
    log_t2 = tm.log_operator([2], q3)
    assert [row[0] for row in log_t2] == [0, 2, -1]
    # nilpotency of order <= m
    assert la.is_zero_matrix(la.mat_pow(log_t2, 3))


def test_log_equals_mult_h1_under_iso(rng):
    for g, m in [(1, 2), (1, 4), (2, 3), (3, 2)]:
        iso = tm.iso_rmodm_to_rm(g, m)
        q = quotient_algebra(SubgroupSpec.full(g), m)
        mod = tm.trunc_module(g, m)
        for _ in range(5):
            gamma = tuple(rng.randint(-2, 2) for _ in range(g))
            log_q = tm.log_operator(gamma, q)
            mult = tm.mult_h1([Fraction(x) for x in gamma], mod)
            assert la.mat_eq(la.matmul(iso, log_q), la.matmul(mult, iso))
            # commutes with every deck action
            delta = tuple(rng.randint(-2, 2) for _ in range(g))
            act = q.mult_matrix(LaurentPoly.monomial(delta))
            assert la.mat_eq(la.matmul(log_q, act), la.matmul(act, log_q))


def test_mult_h1_examples():
    m = 3
    mod = tm.trunc_module(1, m)
    s = tm.mult_h1([1], mod)
    top = [Fraction(0)] * mod.dim
    top[mod.index((m - 1,))] = Fraction(1)
    assert la.mat_vec(s, top) == [0] * mod.dim  # s * s^{m-1} = 0
    dual = tm.trunc_module(1, 2, tm.DUAL_VARIANT)
    sd = tm.mult_h1([1], dual)
    # s . (s^1)^vee = (s^0)^vee ; s . (s^0)^vee = 0
    assert la.mat_vec(sd, [Fraction(0), Fraction(1)]) == [1, 0]
    assert la.mat_vec(sd, [Fraction(1), Fraction(0)]) == [0, 0]
    assert la.is_zero_matrix(tm.mult_h1([0, 0], tm.trunc_module(2, 2)))


def test_mult_h1_power_vanishes():
    mod = tm.trunc_module(2, 3)
    s = tm.mult_h1([1, 2], mod)
    assert la.is_zero_matrix(la.mat_pow(s, 3))


def test_projection_examples():
    p = tm.projection(1, 2, 1)
    assert p == frac_mat([[1, 0]])
    assert tm.projection(1, 2, 2) == la.identity(2)
    with pytest.raises(BadOrder):
        tm.projection(1, 1, 2)
    # composition on (3, 2, 1) for g = 2, entrywise
    assert la.mat_eq(tm.projection(2, 3, 1),
                     la.matmul(tm.projection(2, 2, 1), tm.projection(2, 3, 2)))
    # dual variant: injective inclusion, transpose of the projection
    pd = tm.projection(2, 3, 2, tm.DUAL_VARIANT)
    assert la.mat_eq(pd, la.transpose(tm.projection(2, 3, 2)))


def test_projection_intertwines(rng):
    g, m_hi, m_lo = 2, 3, 2
    proj = tm.projection(g, m_hi, m_lo)
    for _ in range(8):
        gamma = [rng.randint(-2, 2) for _ in range(g)]
        a_hi = tm.rm_action(gamma, tm.trunc_module(g, m_hi))
        a_lo = tm.rm_action(gamma, tm.trunc_module(g, m_lo))
        assert la.mat_eq(la.matmul(proj, a_hi), la.matmul(a_lo, proj))
        mult_hi = tm.mult_h1(gamma, tm.trunc_module(g, m_hi))
        mult_lo = tm.mult_h1(gamma, tm.trunc_module(g, m_lo))
        assert la.mat_eq(la.matmul(proj, mult_hi), la.matmul(mult_lo, proj))


def test_tate_pairing():
    assert tm.tate_am(1, 2) == frac_mat([[0, 1], [1, 0]])
    assert tm.tate_am(1, 1) == frac_mat([[1]])
    with pytest.raises(MultivariateInput):
        tm.tate_am(2, 2)
    m = 3
    s = tm.mult_h1([1], tm.trunc_module(1, m))
    sd = tm.mult_h1([1], tm.trunc_module(1, m, tm.DUAL_VARIANT))
    a_m = tm.tate_am(1, m)
    assert la.mat_eq(la.matmul(a_m, s), la.matmul(sd, a_m))
    assert la.rank(a_m) == m


def test_rho_push():
    # t -> t1 t2: s -> s1 + s2
    rp = tm.rho_push([[1], [1]], 2)
    assert [row[1] for row in rp] == [0, 1, 1]
    # identity and zero
    assert la.mat_eq(tm.rho_push([[1, 0], [0, 1]], 3), la.identity(tm.trunc_module(2, 3).dim))
    z = tm.rho_push([[0]], 3)
    assert [row[0] for row in z] == [1, 0, 0]
    assert all(z[i][j] == 0 for i in range(3) for j in range(1, 3))


def test_rho_push_functorial(rng):
    for _ in range(10):
        m = rng.randint(1, 3)
        rho1 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
        rho2 = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(3)]
        comp = [[sum(rho2[i][k] * rho1[k][j] for k in range(2)) for j in range(2)] for i in range(3)]
        lhs = tm.rho_push(comp, m)
        rhs = la.matmul(tm.rho_push(rho2, m), tm.rho_push(rho1, m))
        assert la.mat_eq(lhs, rhs)
        # dual is the transpose, contravariant
        assert la.mat_eq(tm.rho_push(comp, m, tm.DUAL_VARIANT), la.transpose(lhs))


def test_rho_push_is_algebra_map(rng):
    m = 3
    rho = [[1, -1], [0, 2]]
    rp = tm.rho_push(rho, m)
    src = tm.trunc_module(2, m)
    # multiplicativity on the generators: image of s1*s2 equals product of images
    idx = src.index((1, 1))
    img_s1 = [row[src.index((1, 0))] for row in rp]
    img_s2 = [row[src.index((0, 1))] for row in rp]
    dst = tm.trunc_module(2, m)
    e1 = {a: c for a, c in zip(dst.basis, img_s1) if c}
    e2 = {a: c for a, c in zip(dst.basis, img_s2) if c}
    prod = tm._elem_mul(e1, e2, m)
    col = [row[idx] for row in rp]
    expect = [prod.get(a, Fraction(0)) for a in dst.basis]
    assert col == expect
