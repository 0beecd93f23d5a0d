"""Groebner engine: kernels, saturation, lifts, homology presentations.

The PID oracle for g = 1 kernels is the Smith normal form path, which is
computed by entirely separate code; membership questions are cross-checked
by brute-force degree-bounded linear algebra over the monomial grid.
"""

from fractions import Fraction
from itertools import product

import pytest

from alexmod import linalg, syzygy as sz
from alexmod.chain import quotient_of_homology, _coker_space
from alexmod.errors import ComputationCancelled
from alexmod.laurent import (LaurentPoly, SubgroupSpec, quotient_algebra, snf_full,
                             to_unipoly)
from alexmod import unipoly

from conftest import lp, random_laurent, tvar


# ---------------------------------------------------------------------------
# oracles


def snf_kernel(matrix):
    """Kernel of a g = 1 Laurent matrix via the Smith normal form path."""
    rows = len(matrix)
    cols = len(matrix[0])
    _, _, d, v, _ = snf_full(matrix)
    ker_idx = [k for k in range(cols) if k >= min(rows, cols) or d[k][k].is_zero()]
    return [[v[i][k] for i in range(cols)] for k in ker_idx]


def brute_member(gens, target, max_deg, nvars):
    """Degree-bounded membership in the polynomial span of gens.

    Unknown coefficients run over all monomials of degree <= max_deg in each
    variable; membership becomes one exact linear system.
    """
    monos = list(product(range(max_deg + 1), repeat=nvars))
    ambient = len(target)
    support = set()
    cols = []
    for g in gens:
        for mono in monos:
            vec = {}
            for pos, p in enumerate(g):
                for e, c in p.terms.items():
                    key = (pos, tuple(a + b for a, b in zip(e, mono)))
                    vec[key] = vec.get(key, Fraction(0)) + c
            cols.append(vec)
            support.update(vec)
    tvec = {}
    for pos, p in enumerate(target):
        for e, c in p.terms.items():
            tvec[(pos, e)] = c
    support.update(tvec)
    support = sorted(support)
    a = [[col.get(key, Fraction(0)) for col in cols] for key in support]
    b = [tvec.get(key, Fraction(0)) for key in support]
    return linalg.solve(a, b) is not None


# ---------------------------------------------------------------------------
# kernels


def test_kernel_examples():
    one = LaurentPoly.one(1)
    zero = LaurentPoly.zero(1)
    gens = sz.kernel([[tvar() - 1, tvar() - 1]])
    assert len(gens) == 1
    v = gens[0]
    # generated by (1, -1) up to a unit
    assert (v[0] + v[1]).is_zero()
    assert v[0].is_unit()

    assert sz.kernel([[zero]]) == [[one]]
    assert sz.kernel([[one, zero], [zero, one]]) == []


def test_kernel_vs_snf_roundtrip(rng):
    for _ in range(12):
        mat = [[random_laurent(rng, 1, 2) for _ in range(3)] for _ in range(2)]
        g_gens = sz.kernel(mat)
        s_gens = snf_kernel(mat)
        for v in g_gens:
            assert all(p.is_zero() for p in sz.lp_matvec(mat, v))
        for v in s_gens:
            assert all(p.is_zero() for p in sz.lp_matvec(mat, v))
        # same module: mutual containment
        for v in s_gens:
            assert sz.module_contains(g_gens, v, 3, 1)
        for v in g_gens:
            assert sz.module_contains(s_gens, v, 3, 1)
        assert bool(g_gens) == bool(s_gens)


def test_kernel_multivariate_koszul():
    t1 = LaurentPoly.monomial((1, 0))
    t2 = LaurentPoly.monomial((0, 1))
    gens = sz.kernel([[t1 - 1, t2 - 1]])
    assert len(gens) == 1
    v = gens[0]
    assert v[0] * (t1 - 1) + v[1] * (t2 - 1) == LaurentPoly.zero(2)


# ---------------------------------------------------------------------------
# saturation


def test_saturate_unit_scaling():
    out = sz.saturate([[tvar()]], 1, 1)
    assert out == [[LaurentPoly.one(1)]]


def test_saturate_idempotent(rng):
    for _ in range(6):
        gens = [[random_laurent(rng, 2, 2) for _ in range(2)] for _ in range(2)]
        gens = [g for g in gens if any(not p.is_zero() for p in g)]
        if not gens:
            continue
        s1 = sz.saturate(gens, 2, 2)
        s2 = sz.saturate(s1, 2, 2)
        for v in s1:
            assert sz.module_contains(s2, v, 2, 2)
        for v in s2:
            assert sz.module_contains(s1, v, 2, 2)


def test_saturate_bivariate_example():
    t1 = LaurentPoly.monomial((1, 0))
    t2 = LaurentPoly.monomial((0, 1))
    f = t1 * t2
    gen = [f * f, t1]  # (t1 t2)^2 e1 + t1 e2 = t1 ( t1 t2^2 e1 + e2 )
    sat = sz.saturate([gen], 2, 2)
    want = [t1 * t2 * t2, LaurentPoly.one(2)]
    assert sz.module_contains(sat, want, 2, 2)
    assert not sz.module_contains(sat, [LaurentPoly.one(2), LaurentPoly.zero(2)], 2, 2)
    # every saturated generator returns to the module after multiplying by f^N
    for v in sat:
        assert any(
            brute_member([gen], [f**n * p for p in v], 6, 2)
            for n in range(0, 4)
        )


def test_lift_recovers_combination(rng):
    t1 = LaurentPoly.monomial((1, 0))
    t2 = LaurentPoly.monomial((0, 1))
    gens = [[t1 - 1, t2], [t2 - 1, t1]]
    coeffs = [lp({(1, 0): 2, (0, 0): -1}, 2), lp({(0, 1): 1}, 2)]
    target = [
        coeffs[0] * gens[0][0] + coeffs[1] * gens[1][0],
        coeffs[0] * gens[0][1] + coeffs[1] * gens[1][1],
    ]
    got = sz.lift(gens, target)
    assert got is not None
    rebuilt = [
        got[0] * gens[0][0] + got[1] * gens[1][0],
        got[0] * gens[0][1] + got[1] * gens[1][1],
    ]
    assert rebuilt[0] == target[0] and rebuilt[1] == target[1]


def test_cancellation_token():
    mat = [[tvar() - 1, tvar() + 1, tvar() * tvar() - 2]]
    with pytest.raises(ComputationCancelled):
        sz.kernel(mat, cancel=lambda: True)


# ---------------------------------------------------------------------------
# homology presentations through the Groebner route


def test_present_homology_circle(trefoil_complex):
    from alexmod.chain import circle_complex

    c = circle_complex()
    pres0 = sz.present_homology(c, 0)
    assert pres0.num_gens == 1
    relmat = pres0.relation_matrix()
    from alexmod.laurent import laurent_snf

    _, d, _ = laurent_snf(relmat)
    assert d[0][0] == tvar() - 1
    pres1 = sz.present_homology(c, 1)
    q = quotient_algebra(SubgroupSpec.full(1), 2)
    assert _coker_space(pres1, q, 1).dim == 0


def test_present_homology_trefoil(trefoil_complex):
    pres = sz.present_homology(trefoil_complex, 1)
    assert pres.num_gens >= 1
    relmat = pres.relation_matrix()
    from alexmod.laurent import laurent_snf

    _, d, _ = laurent_snf(relmat)
    divisors = [d[k][k] for k in range(min(len(d), len(d[0]))) if not d[k][k].is_zero()]
    nonunits = [p for p in divisors if unipoly.degree(to_unipoly(p)[0]) > 0]
    assert len(nonunits) == 1
    assert nonunits[0] == lp({0: 1, 1: -1, 2: 1})
    assert len(divisors) == pres.num_gens  # torsion module: no free part


def test_presentation_independence_of_quotient_dims(trefoil_complex):
    """Two independently computed presentations give equal quotient dims."""
    from alexmod.chain import _presentation_snf

    pres_g = sz.present_homology(trefoil_complex, 1)
    pres_s = _presentation_snf(trefoil_complex, 1)
    for n, m in [(1, 1), (6, 1), (6, 2), (2, 3)]:
        q = quotient_algebra(SubgroupSpec.cyclic(n), m)
        assert _coker_space(pres_g, q, 1).dim == _coker_space(pres_s, q, 1).dim
