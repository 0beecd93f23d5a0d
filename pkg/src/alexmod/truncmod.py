"""Truncation modules R_m and their duals R_{-m}.

R_m is the truncated symmetric algebra on the degree-one symbols
s_1, ..., s_g (the logs of the deck generators): monomials of total degree
below m, products truncating to zero at degree m.  The group ring acts
through gamma -> e^{log gamma}; the dual carries the transpose action, so
the pairing satisfies <gamma x, phi> = <x, gamma phi>.

Elements are dicts mapping exponent tuples to rationals; public operations
return matrices in the graded lexicographic basis.
"""

from fractions import Fraction

from . import linalg
from .errors import ArityMismatch, BadOrder, MultivariateInput
from .laurent import LaurentPoly, QuotientAlgebra, _monomials_below

F0 = Fraction(0)
F1 = Fraction(1)

R_VARIANT = "R"
DUAL_VARIANT = "dual"


class TruncModule:
    """R_m (variant 'R') or its dual R_{-m} (variant 'dual')."""

    __slots__ = ("g", "m", "variant", "basis", "_index")

    def __init__(self, g, m, variant=R_VARIANT):
        if m < 1:
            raise BadOrder("truncation order must be >= 1")
        if variant not in (R_VARIANT, DUAL_VARIANT):
            raise ValueError(f"unknown variant {variant!r}")
        self.g = g
        self.m = m
        self.variant = variant
        self.basis = _monomials_below(g, m)
        self._index = {a: i for i, a in enumerate(self.basis)}

    @property
    def dim(self):
        return len(self.basis)

    def index(self, alpha):
        return self._index[tuple(alpha)]

    def __repr__(self):
        name = "R_{-%d}" % self.m if self.variant == DUAL_VARIANT else f"R_{self.m}"
        return f"TruncModule({name}, g={self.g}, dim={self.dim})"


def trunc_module(g, m, variant=R_VARIANT):
    return TruncModule(g, m, variant)


# -- arithmetic on R_m elements (dict alpha -> coefficient) ----------------


def _elem_mul(a, b, m):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if sum(e) >= m:
                continue
            out[e] = out.get(e, F0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def _elem_to_column(elem, module: TruncModule):
    col = [F0] * module.dim
    for e, c in elem.items():
        col[module.index(e)] = c
    return col


def _exp_of_linear(vec, g, m):
    """e^{sum a_i s_i} in R_m."""
    lin = {}
    for i, a in enumerate(vec):
        if a:
            e = tuple(1 if j == i else 0 for j in range(g))
            lin[e] = Fraction(a)
    acc = {(0,) * g: F1}
    term = {(0,) * g: F1}
    fact = 1
    for j in range(1, m):
        term = _elem_mul(term, lin, m)
        if not term:
            break
        fact *= j
        for e, c in term.items():
            acc[e] = acc.get(e, F0) + c / fact
    return {e: c for e, c in acc.items() if c != 0}


def mult_h1(a, module: TruncModule):
    """Matrix of multiplication by the degree-one element sum a_i s_i.

    On R_m this raises monomial degree by one (top degree dies); on the dual
    it is the transpose, which lowers degree.
    """
    if len(a) != module.g:
        raise ArityMismatch(f"vector has arity {len(a)} != {module.g}")
    rmod = TruncModule(module.g, module.m, R_VARIANT)
    mat = linalg.zeros(rmod.dim, rmod.dim)
    for col, alpha in enumerate(rmod.basis):
        for i, ai in enumerate(a):
            if not ai:
                continue
            beta = tuple(x + (1 if j == i else 0) for j, x in enumerate(alpha))
            if sum(beta) < module.m:
                mat[rmod.index(beta)][col] += Fraction(ai)
    if module.variant == DUAL_VARIANT:
        return linalg.transpose(mat)
    return mat


def rm_action(gamma, module: TruncModule):
    """Matrix of the action of the deck element gamma = prod gamma_i^{a_i}.

    The action is multiplication by e^{log gamma}; on the dual module it is
    the transpose (the action dual to multiplication, no inverses involved).
    """
    if len(gamma) != module.g:
        raise ArityMismatch(f"deck exponent has arity {len(gamma)} != {module.g}")
    rmod = TruncModule(module.g, module.m, R_VARIANT)
    expel = _exp_of_linear([Fraction(x) for x in gamma], module.g, module.m)
    mat = []
    for alpha in rmod.basis:
        row = [F0] * rmod.dim
        mat.append(row)
    for col, alpha in enumerate(rmod.basis):
        prod_ = _elem_mul(expel, {alpha: F1}, module.m)
        for e, c in prod_.items():
            mat[rmod.index(e)][col] = c
    if module.variant == DUAL_VARIANT:
        return linalg.transpose(mat)
    return mat


def iso_rmodm_to_rm(g, m):
    """Basis-change matrix of the canonical isomorphism R/m^m -> R_m.

    Columns are indexed by the (t-1)^alpha basis of R/m^m, rows by the
    s^beta basis of R_m; the column for alpha is prod_i (e^{s_i}-1)^{alpha_i}.
    In these paired graded bases the matrix is triangular with unit diagonal.
    """
    rmod = TruncModule(g, m, R_VARIANT)
    eis = []
    for i in range(g):
        ei = _exp_of_linear([F1 if j == i else F0 for j in range(g)], g, m)
        ei.pop((0,) * g)
        eis.append(ei)
    cols = []
    for alpha in rmod.basis:
        acc = {(0,) * g: F1}
        for i, ai in enumerate(alpha):
            for _ in range(ai):
                acc = _elem_mul(acc, eis[i], m)
        cols.append(_elem_to_column(acc, rmod))
    return [list(row) for row in zip(*cols)]


def log_operator(gamma, target):
    """The nilpotent log of the deck action of gamma on a truncation.

    target may be a QuotientAlgebra over the full subgroup or a TruncModule.
    Computed as -sum_{i>=1} (1 - A)^i / i where A is the action of gamma;
    the series is finite because 1 - A is nilpotent.
    """
    if isinstance(target, QuotientAlgebra):
        a = target.mult_matrix(LaurentPoly.monomial(tuple(gamma)))
    elif isinstance(target, TruncModule):
        a = rm_action(gamma, target)
    else:
        raise TypeError("log_operator target must be a QuotientAlgebra or TruncModule")
    return matrix_log_unipotent(a)


def matrix_log_unipotent(a):
    """log of a unipotent matrix by its finite power series."""
    n = len(a)
    x = linalg.mat_sub(linalg.identity(n), a)
    out = linalg.zeros(n, n)
    term = x
    i = 1
    while not linalg.is_zero_matrix(term):
        if i > n:
            raise ValueError("matrix is not unipotent")
        out = linalg.mat_sub(out, linalg.mat_scale(term, Fraction(1, i)))
        term = linalg.matmul(term, x)
        i += 1
    return out


def projection(g, m_from, m_to, variant=R_VARIANT):
    """Projection R_{m_from} ->> R_{m_to}, or the dual inclusion for 'dual'.

    For the R variant the matrix is dim(m_to) x dim(m_from) and kills the
    monomials of degree >= m_to; the dual variant is its transpose, the
    inclusion R_{-m_to} into R_{-m_from}.
    """
    if m_from < m_to:
        raise BadOrder(f"projection needs m_from >= m_to, got {m_from} < {m_to}")
    src = TruncModule(g, m_from, R_VARIANT)
    dst = TruncModule(g, m_to, R_VARIANT)
    mat = linalg.zeros(dst.dim, src.dim)
    for col, alpha in enumerate(src.basis):
        if sum(alpha) < m_to:
            mat[dst.index(alpha)][col] = F1
    if variant == DUAL_VARIANT:
        return linalg.transpose(mat)
    return mat


def tate_am(g, m):
    """The pairing isomorphism A_m: R_m -> R_{-m} for g = 1.

    Sends s^j to the dual basis vector of s^{m-1-j}; it intertwines
    multiplication by s with the dual multiplication operator.
    """
    if g != 1:
        raise MultivariateInput("the Tate pairing A_m is defined for g = 1 only")
    mat = linalg.zeros(m, m)
    for j in range(m):
        mat[m - 1 - j][j] = F1
    return mat


def rho_push(rho, m, variant=R_VARIANT):
    """Map R^1_m -> R^2_m induced by an integer matrix rho: Z^{g1} -> Z^{g2}.

    rho is given by rows (g2 x g1); the algebra map sends s_i to the image
    of the i-th generator, extended multiplicatively and truncated.  The
    dual variant is the transpose map R^2_{-m} -> R^1_{-m}.
    """
    g2 = len(rho)
    g1 = len(rho[0]) if g2 else 0
    src = TruncModule(g1, m, R_VARIANT)
    dst = TruncModule(g2, m, R_VARIANT)
    images = []
    for i in range(g1):
        img = {}
        for j in range(g2):
            if rho[j][i]:
                e = tuple(1 if k == j else 0 for k in range(g2))
                img[e] = Fraction(rho[j][i])
        images.append(img)
    cols = []
    for alpha in src.basis:
        acc = {(0,) * g2: F1}
        for i, ai in enumerate(alpha):
            for _ in range(ai):
                acc = _elem_mul(acc, images[i], m)
        cols.append(_elem_to_column(acc, dst))
    mat = [list(row) for row in zip(*cols)]
    if variant == DUAL_VARIANT:
        return linalg.transpose(mat)
    return mat
