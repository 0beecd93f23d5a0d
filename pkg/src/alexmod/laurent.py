"""The Laurent polynomial ring R = k[t1^±1, ..., tg^±1] over exact rationals.

Provides the ring elements themselves, augmentation, finite-index subgroup
lattices of Z^g, and the finite-dimensional quotient algebras R/(m_H R)^m
where m_H is the augmentation ideal of the subgroup ring k[H].  For g = 1
it also provides Smith normal form over k[t^±1], which is a PID.
"""

from fractions import Fraction
from itertools import product
from math import comb

from . import unipoly, zmat
from .errors import ArityMismatch, MultivariateInput, SingularSubgroup

F0 = Fraction(0)
F1 = Fraction(1)


class LaurentPoly:
    """Element of k[t1^±1,...,tg^±1]: a map from exponent vectors to rationals.

    Immutable by convention; no zero coefficients are stored.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ArityMismatch(f"exponent {exps} has arity != {nvars}")
                clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def one(cls, nvars):
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls(len(exps), {tuple(exps): Fraction(coeff)})

    @classmethod
    def gen(cls, i, nvars):
        exps = [0] * nvars
        exps[i] = 1
        return cls.monomial(exps)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ArityMismatch(f"arity {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, F0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, F0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.nvars, other)
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        """Units of the Laurent ring are the single terms c * t^a, c != 0."""
        return len(self.terms) == 1

    def unit_inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError("not a unit in the Laurent ring")
        ((e, c),) = self.terms.items()
        return LaurentPoly(self.nvars, {tuple(-x for x in e): 1 / c})

    def augment(self):
        """Evaluation at t1 = ... = tg = 1, the ring augmentation."""
        return sum(self.terms.values(), F0)

    def shift(self, exps):
        """Multiply by the monomial t^exps."""
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()})

    def min_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def support(self):
        return sorted(self.terms)

    def to_obj(self):
        return [[list(e), c.numerator, c.denominator] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_obj(cls, obj, nvars):
        return cls(nvars, {tuple(e): Fraction(n, d) for e, n, d in obj})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                f"t{i+1}^{x}" if self.nvars > 1 else f"t^{x}" for i, x in enumerate(e) if x != 0
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def augment(p: LaurentPoly) -> Fraction:
    """Augmentation of p: sum of its coefficients."""
    return p.augment()


# ---------------------------------------------------------------------------
# univariate bridge


def to_unipoly(p: LaurentPoly):
    """Write a g=1 Laurent polynomial as (polynomial, shift): p = t^shift * poly."""
    if p.nvars != 1:
        raise MultivariateInput("univariate operation on a multivariate element")
    if p.is_zero():
        return [], 0
    lo = min(e[0] for e in p.terms)
    hi = max(e[0] for e in p.terms)
    coeffs = [F0] * (hi - lo + 1)
    for (e,), c in p.terms.items():
        coeffs[e - lo] = c
    return unipoly.trim(coeffs), lo


def from_unipoly(coeffs, shift=0):
    return LaurentPoly(1, {(i + shift,): c for i, c in enumerate(coeffs)})


def unit_normalize(p: LaurentPoly):
    """Normal form of p up to units: monic with nonzero constant term.

    Returns (normalized polynomial as LaurentPoly, the unit u with p = u * normalized).
    """
    poly, shift = to_unipoly(p)
    if not poly:
        return LaurentPoly.zero(1), LaurentPoly.one(1)
    lead = poly[-1]
    return from_unipoly(unipoly.monic(poly)), LaurentPoly(1, {(shift,): lead})


# ---------------------------------------------------------------------------
# subgroups of Z^g


class SubgroupSpec:
    """Finite-index subgroup H of Z^g given by the columns of an integer matrix."""

    __slots__ = ("g", "matrix", "hnf", "_det")

    def __init__(self, matrix):
        self.matrix = [list(map(int, row)) for row in matrix]
        self.g = len(self.matrix)
        if any(len(row) != self.g for row in self.matrix):
            raise SingularSubgroup("subgroup basis must be a square matrix")
        self._det = zmat.det_int(self.matrix)
        if self._det == 0:
            raise SingularSubgroup("subgroup basis matrix has determinant 0")
        self.hnf = zmat.hnf_columns(self.matrix)

    @classmethod
    def full(cls, g):
        return cls([[1 if i == j else 0 for j in range(g)] for i in range(g)])

    @classmethod
    def cyclic(cls, n):
        """The subgroup <t^n> of Z, for g = 1."""
        return cls([[n]])

    def index(self):
        return abs(self._det)

    def exponent(self):
        """Exponent of the quotient group Z^g / H."""
        return zmat.quotient_exponent(self.matrix)

    def generators(self):
        """Deterministic lattice basis: the columns of the Hermite normal form."""
        return [[self.hnf[r][i] for r in range(self.g)] for i in range(self.g)]

    def box(self):
        """Canonical coset representatives: the HNF box, in lexicographic order."""
        return [tuple(c) for c in product(*[range(self.hnf[i][i]) for i in range(self.g)])]

    def reduce_vector(self, v):
        """v = c + H q with c the canonical representative; returns (c, q)."""
        c, q = zmat.hnf_reduce(self.hnf, list(v))
        return tuple(c), tuple(q)

    def contains(self, v):
        c, _ = self.reduce_vector(v)
        return all(x == 0 for x in c)

    def is_subgroup_of(self, other):
        """True if this lattice is contained in `other`'s lattice."""
        return all(other.contains(col) for col in _columns(self.matrix))

    def to_obj(self):
        return [row[:] for row in self.matrix]

    def __repr__(self):
        return f"SubgroupSpec({self.matrix})"


def _columns(mat):
    return [list(col) for col in zip(*mat)]


def _monomials_below(g, m):
    """Exponent tuples of total degree < m, graded lexicographic order."""
    out = []
    for total in range(m):
        out.extend(sorted(_compositions(total, g)))
    return out


def _compositions(total, g):
    if g == 0:
        return [()] if total == 0 else []
    if g == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, g - 1):
            out.append((first,) + rest)
    return out


def _binom(q, k):
    """Generalized binomial coefficient C(q, k) for integer q of any sign."""
    if k == 0:
        return 1
    if q >= 0:
        return comb(q, k) if k <= q else 0
    return (-1) ** k * comb(-q + k - 1, k)


class QuotientAlgebra:
    """The finite-dimensional algebra R/(m_H R)^m with its monomial basis.

    Basis elements are labelled (c, alpha): the class of
    t^c * prod_i (t^{h_i} - 1)^{alpha_i}, where c runs over the HNF coset box
    and the h_i are the HNF lattice generators; alpha has total degree < m.
    Labels are ordered degree-major (graded lexicographic in alpha, then by
    coset), which makes all emitted matrices deterministic.
    """

    __slots__ = ("subgroup", "power", "g", "cosets", "monos", "basis", "_index",
                 "_exp_cache", "_lift_cache", "_gen_action")

    def __init__(self, subgroup: SubgroupSpec, power: int):
        if power < 1:
            raise ValueError("truncation order must be >= 1")
        self.subgroup = subgroup
        self.power = power
        self.g = subgroup.g
        self.cosets = subgroup.box()
        self.monos = _monomials_below(self.g, power)
        self.basis = [(c, a) for a in self.monos for c in self.cosets]
        self._index = {lab: i for i, lab in enumerate(self.basis)}
        self._exp_cache = {}
        self._lift_cache = {}
        self._gen_action = {}

    @property
    def dimension(self):
        return len(self.basis)

    @property
    def nvars(self):
        return self.g

    def zero_vector(self):
        return [F0] * self.dimension

    def one_vector(self):
        v = self.zero_vector()
        v[self._index[((0,) * self.g, (0,) * self.g)]] = F1
        return v

    def _reduce_exponent(self, exps):
        """Coordinates of the class of the monomial t^exps."""
        exps = tuple(exps)
        hit = self._exp_cache.get(exps)
        if hit is not None:
            return hit
        c, q = self.subgroup.reduce_vector(exps)
        out = {}
        for alpha in self.monos:
            coeff = 1
            for qi, ai in zip(q, alpha):
                coeff *= _binom(qi, ai)
                if coeff == 0:
                    break
            if coeff:
                out[self._index[(c, alpha)]] = Fraction(coeff)
        self._exp_cache[exps] = out
        return out

    def reduce(self, p: LaurentPoly):
        """Coordinate vector of the class of p in the chosen basis."""
        if p.nvars != self.g:
            raise ArityMismatch(f"polynomial arity {p.nvars} != {self.g}")
        v = self.zero_vector()
        for e, coeff in p.terms.items():
            for idx, c in self._reduce_exponent(e).items():
                v[idx] += coeff * c
        return v

    def basis_lift(self, i):
        """A Laurent polynomial representing basis element i."""
        p = self._lift_cache.get(i)
        if p is None:
            c, alpha = self.basis[i]
            p = LaurentPoly.monomial(c)
            gens = self.subgroup.generators()
            for h, a in zip(gens, alpha):
                if a:
                    factor = LaurentPoly.monomial(h) - 1
                    p = p * factor**a
            self._lift_cache[i] = p
        return p

    def multiply_coords(self, u, v):
        """Product of two coordinate vectors in the algebra."""
        out = self.zero_vector()
        for i, ci in enumerate(u):
            if ci == 0:
                continue
            pi = self.basis_lift(i)
            for j, cj in enumerate(v):
                if cj == 0:
                    continue
                w = self.reduce(pi * self.basis_lift(j))
                c = ci * cj
                for k, x in enumerate(w):
                    if x:
                        out[k] += c * x
        return out

    def mult_matrix(self, p: LaurentPoly):
        """Matrix of multiplication by p, columns indexed by the basis."""
        cols = [self.reduce(p * self.basis_lift(j)) for j in range(self.dimension)]
        return [list(row) for row in zip(*cols)]

    def gen_action(self, i, inverse=False):
        """Multiplication by t_i (or its inverse); cached."""
        key = (i, inverse)
        mat = self._gen_action.get(key)
        if mat is None:
            exps = [0] * self.g
            exps[i] = -1 if inverse else 1
            mat = self.mult_matrix(LaurentPoly.monomial(exps))
            self._gen_action[key] = mat
        return mat

    def structure_constants(self):
        """Full multiplication table; intended for small algebras and tests."""
        dim = self.dimension
        table = {}
        for i in range(dim):
            for j in range(dim):
                ei = [F1 if k == i else F0 for k in range(dim)]
                ej = [F1 if k == j else F0 for k in range(dim)]
                table[(i, j)] = self.multiply_coords(ei, ej)
        return table

    def truncation_projection(self, target: "QuotientAlgebra"):
        """Matrix of the projection onto the same subgroup's lower truncation."""
        if target.subgroup.hnf != self.subgroup.hnf:
            raise ValueError("truncation projection requires the same subgroup")
        if target.power > self.power:
            raise ValueError("target truncation must be lower")
        rows = []
        for c, a in target.basis:
            row = [F0] * self.dimension
            row[self._index[(c, a)]] = F1
            rows.append(row)
        return rows

    def subgroup_projection(self, target: "QuotientAlgebra"):
        """Matrix of R/(m_K2)^m -> R/(m_K1)^m for K2 <= K1 (self built on K2)."""
        if not self.subgroup.is_subgroup_of(target.subgroup):
            raise ValueError("source subgroup must be contained in target subgroup")
        cols = [target.reduce(self.basis_lift(j)) for j in range(self.dimension)]
        return [list(row) for row in zip(*cols)]

    def __repr__(self):
        return f"QuotientAlgebra(g={self.g}, index={self.subgroup.index()}, m={self.power}, dim={self.dimension})"


def quotient_algebra(subgroup: SubgroupSpec, m: int) -> QuotientAlgebra:
    """The algebra R/(m_H R)^m for the finite-index subgroup H."""
    return QuotientAlgebra(subgroup, m)


def reduce_mod(p: LaurentPoly, q: QuotientAlgebra):
    """Coordinate vector of p in the quotient algebra's basis."""
    return q.reduce(p)


# ---------------------------------------------------------------------------
# Smith normal form over k[t^±1]  (g = 1, where R is a PID)


def _snf_checked(matrix):
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    for row in matrix:
        for p in row:
            if p.nvars != 1:
                raise MultivariateInput("laurent_snf is only defined for g = 1")
    d = [[p for p in row] for row in matrix]
    return d, rows, cols


def _stripped_degree(p: LaurentPoly):
    poly, _ = to_unipoly(p)
    return unipoly.degree(poly)


class _Transform:
    """Accumulated left transform T with its inverse (invariant: inv @ mat = I).

    Column operations on the worked matrix are recorded through the same row
    calls on the transposed transform; `laurent_snf` transposes at the end.
    """

    def __init__(self, n):
        self.mat = _lp_identity(n)
        self.inv = _lp_identity(n)

    def swap(self, i, j):
        self.mat[i], self.mat[j] = self.mat[j], self.mat[i]
        for row in self.inv:
            row[i], row[j] = row[j], row[i]

    def scale(self, i, unit: LaurentPoly):
        self.mat[i] = [unit * x for x in self.mat[i]]
        uinv = unit.unit_inverse()
        for row in self.inv:
            row[i] = row[i] * uinv

    def add_multiple(self, dst, src, q: LaurentPoly):
        # row_dst += q * row_src ; inverse gets col_src -= q * col_dst
        self.mat[dst] = [a + q * b for a, b in zip(self.mat[dst], self.mat[src])]
        for row in self.inv:
            row[src] = row[src] - q * row[dst]


def _lp_identity(n):
    one = LaurentPoly.one(1)
    zero = LaurentPoly.zero(1)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def laurent_snf(matrix):
    """Smith normal form over k[t^±1]: returns (U, D, V) with U M V = D.

    D is diagonal with each entry dividing the next (up to units); the
    diagonal entries are normalized to monic polynomials with nonzero
    constant term.  U and V are invertible over the Laurent ring.
    """
    u, uinv, d, v, vinv = snf_full(matrix)
    return u, d, v


def snf_full(matrix):
    """Smith normal form with tracked inverses: (U, Uinv, D, V, Vinv)."""
    d, rows, cols = _snf_checked(matrix)
    u = _Transform(rows)
    v = _Transform(cols)

    def row_op(dst, src, q):
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u.add_multiple(dst, src, q)

    def col_op(dst, src, q):
        for r in range(rows):
            d[r][dst] = d[r][dst] + q * d[r][src]
        v.add_multiple(dst, src, q)

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u.swap(i, j)

    def col_swap(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        v.swap(i, j)

    def row_scale(i, unit):
        d[i] = [unit * x for x in d[i]]
        u.scale(i, unit)

    for k in range(min(rows, cols)):
        while True:
            pivot = None
            best = None
            for i in range(k, rows):
                for j in range(k, cols):
                    if not d[i][j].is_zero():
                        deg = _stripped_degree(d[i][j])
                        if best is None or deg < best:
                            best = deg
                            pivot = (i, j)
            if pivot is None:
                break
            i0, j0 = pivot
            if i0 != k:
                row_swap(k, i0)
            if j0 != k:
                col_swap(k, j0)
            _, unit = unit_normalize(d[k][k])
            row_scale(k, unit.unit_inverse())
            pk, _ = to_unipoly(d[k][k])
            clean = True
            for i in range(k + 1, rows):
                if d[i][k].is_zero():
                    continue
                poly, shift = to_unipoly(d[i][k])
                quo, rem = unipoly.divmod_poly(poly, pk)
                row_op(i, k, -from_unipoly(quo, shift))
                if rem:
                    clean = False
            for j in range(k + 1, cols):
                if d[k][j].is_zero():
                    continue
                poly, shift = to_unipoly(d[k][j])
                quo, rem = unipoly.divmod_poly(poly, pk)
                col_op(j, k, -from_unipoly(quo, shift))
                if rem:
                    clean = False
            if not clean:
                continue
            if any(not d[i][k].is_zero() for i in range(k + 1, rows)):
                continue
            if any(not d[k][j].is_zero() for j in range(k + 1, cols)):
                continue
            # divisibility pass over the remaining block
            bad = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if d[i][j].is_zero():
                        continue
                    pij, _ = to_unipoly(d[i][j])
                    if not unipoly.divides(pk, pij):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(k, bad, LaurentPoly.one(1))

    # final unit normalization of the diagonal
    for k in range(min(rows, cols)):
        if not d[k][k].is_zero():
            _, unit = unit_normalize(d[k][k])
            row_scale(k, unit.unit_inverse())

    vmat = _lp_transpose(v.mat)
    vinv = _lp_transpose(v.inv)
    _assert_snf(matrix, u.mat, u.inv, d, vmat, vinv, rows, cols)
    return u.mat, u.inv, d, vmat, vinv


def _lp_matmul(a, b):
    if not a or not b:
        return []
    out = []
    for row in a:
        out.append([sum((row[k] * b[k][j] for k in range(len(b))), LaurentPoly.zero(1)) for j in range(len(b[0]))])
    return out


def _lp_transpose(mat):
    return [list(row) for row in zip(*mat)] if mat else []


def _assert_snf(m, umat, uinv, d, vmat, vinv, rows, cols):
    umv = _lp_matmul(_lp_matmul(umat, m), vmat)
    for i in range(rows):
        for j in range(cols):
            if umv[i][j] != d[i][j]:
                raise AssertionError("SNF verification failed: U M V != D")
    for tmat, tinv, n in ((umat, uinv, rows), (vmat, vinv, cols)):
        prod_ = _lp_matmul(tmat, tinv)
        for i in range(n):
            for j in range(n):
                expected = LaurentPoly.one(1) if i == j else LaurentPoly.zero(1)
                if prod_[i][j] != expected:
                    raise AssertionError("SNF verification failed: transform not invertible")


def snf_diagonal(matrix):
    """Normalized nonzero diagonal entries of the Smith normal form."""
    _, d, _ = laurent_snf(matrix)
    out = []
    for k in range(min(len(d), len(d[0]) if d else 0)):
        if not d[k][k].is_zero():
            out.append(d[k][k])
    return out
