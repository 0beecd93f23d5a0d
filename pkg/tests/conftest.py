import random
from fractions import Fraction

import pytest

from alexmod.chain import FreeChainComplex
from alexmod.fox import builtin, presentation_complex
from alexmod.laurent import LaurentPoly


def frac_mat(rows):
    return [[Fraction(x) for x in row] for row in rows]


def lp(terms, nvars=1):
    """Shorthand: {exponent tuple or int: coeff} -> LaurentPoly."""
    fixed = {}
    for e, c in terms.items():
        if isinstance(e, int):
            e = (e,)
        fixed[e] = Fraction(c)
    return LaurentPoly(nvars, fixed)


def tvar(k=1):
    return LaurentPoly.monomial((k,))


def random_laurent(rng, nvars=1, max_deg=3, max_terms=3, coeff_bound=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-max_deg, max_deg) for _ in range(nvars))
        terms[exps] = Fraction(rng.randint(-coeff_bound, coeff_bound))
    return LaurentPoly(nvars, terms)


def random_complex(rng, nvars=1, r2=2, r1=3, r0=2, max_deg=2, mixes=6):
    """Random bounded complex C_2 -> C_1 -> C_0 with d1 d2 = 0 exactly.

    Seeded from a block-diagonal pair (d2 only hits the slots where d1
    vanishes), then mixed by invertible elementary operations; column
    operations on d1 are paired with the inverse row operations on d2.
    The FreeChainComplex constructor re-verifies d1 d2 = 0.
    """
    zero = LaurentPoly.zero(nvars)
    d1 = [[zero for _ in range(r1)] for _ in range(r0)]
    d2 = [[zero for _ in range(r2)] for _ in range(r1)]
    free = set()
    for i in range(r1):
        if rng.random() < 0.5:
            free.add(i)
    for i in range(r1):
        if i in free:
            for j in range(r2):
                if rng.random() < 0.7:
                    d2[i][j] = random_laurent(rng, nvars, max_deg)
        elif i < r0:
            d1[i][i] = random_laurent(rng, nvars, max_deg)

    def rowop_d1(i, j, q):
        d1[i] = [a + q * b for a, b in zip(d1[i], d1[j])]

    def colop_d1(a, b, q):
        # d1 col_a += q * col_b, paired with d2 row_b -= q * row_a
        for r in range(r0):
            d1[r][a] = d1[r][a] + q * d1[r][b]
        d2[b] = [x - q * y for x, y in zip(d2[b], d2[a])]

    def colop_d2(a, b, q):
        for r in range(r1):
            d2[r][a] = d2[r][a] + q * d2[r][b]

    for _ in range(mixes):
        q = random_laurent(rng, nvars, 1, 2, 2)
        kind = rng.randint(0, 2)
        if kind == 0 and r0 >= 2:
            i, j = rng.sample(range(r0), 2)
            rowop_d1(i, j, q)
        elif kind == 1 and r1 >= 2:
            a, b = rng.sample(range(r1), 2)
            colop_d1(a, b, q)
        elif r2 >= 2:
            a, b = rng.sample(range(r2), 2)
            colop_d2(a, b, q)

    ranks = {0: r0, 1: r1}
    diffs = {1: d1}
    if r2 and any(not p.is_zero() for row in d2 for p in row):
        ranks[2] = r2
        diffs[2] = d2
    return FreeChainComplex(nvars, ranks, diffs)


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture(scope="session")
def trefoil_complex():
    return presentation_complex(builtin("trefoil"))


@pytest.fixture(scope="session")
def pencil3_complex():
    return presentation_complex(builtin("pencil", 3))
