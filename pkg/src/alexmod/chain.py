"""Bounded complexes of free modules over the Laurent ring and their
finite-dimensional homology invariants.

Two constructions are exposed and kept separate, as they do not agree in
general: homology of the quotiented complex H_j(C (x) Q), and the quotient
of homology H_j(C)/(m_H)^m H_j(C).  The latter goes through a finite
presentation of H_j(C): Smith normal form when g = 1, the Groebner engine
otherwise.  Also here: the g = 1 torsion/free splitting, the stabilization
search for the image of H_j(C) in the truncated homology, duality dimension
checks, and the induced maps used by truncation/subgroup towers.
"""

from fractions import Fraction

from . import linalg, syzygy, unipoly
from .errors import ArityMismatch, BoundNotFound, MultivariateInput
from .laurent import (LaurentPoly, QuotientAlgebra, SubgroupSpec, laurent_snf,
                      quotient_algebra, snf_full, to_unipoly, unit_normalize)

F0 = Fraction(0)
F1 = Fraction(1)


class FreeChainComplex:
    """Bounded complex of free R-modules with exact boundary matrices.

    ranks maps degree -> rank; diffs maps degree j to the matrix of
    d_j : C_j -> C_{j-1} (rank_{j-1} rows, rank_j columns).  The composite
    d_j d_{j+1} = 0 is verified on construction.
    """

    def __init__(self, nvars, ranks, diffs):
        self.nvars = nvars
        self.ranks = {int(j): int(r) for j, r in ranks.items() if r}
        self.diffs = {}
        for j, mat in diffs.items():
            j = int(j)
            rows = self.rank(j - 1)
            cols = self.rank(j)
            if mat is None:
                continue
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ArityMismatch(f"boundary d_{j} has wrong shape")
            for row in mat:
                for p in row:
                    if p.nvars != nvars:
                        raise ArityMismatch("boundary entry arity mismatch")
            if rows and cols:
                self.diffs[j] = mat
        self._check_dd()
        self._pres_cache = {}

    def _check_dd(self):
        for j in list(self.diffs):
            if j + 1 in self.diffs:
                prod_ = _lp_matmul(self.diffs[j], self.diffs[j + 1])
                if any(not p.is_zero() for row in prod_ for p in row):
                    raise ArityMismatch(f"d_{j} d_{j+1} != 0")

    def rank(self, j):
        return self.ranks.get(j, 0)

    def boundary(self, j):
        return self.diffs.get(j)

    def degrees(self):
        if not self.ranks:
            return (0, -1)
        return (min(self.ranks), max(self.ranks))

    def to_obj(self):
        lo, hi = self.degrees()
        return {
            "schema": 1,
            "nvars": self.nvars,
            "ranks": {str(j): self.rank(j) for j in sorted(self.ranks)},
            "differentials": {
                str(j): [[p.to_obj() for p in row] for row in mat]
                for j, mat in sorted(self.diffs.items())
            },
        }

    @classmethod
    def from_obj(cls, obj):
        nvars = int(obj["nvars"])
        ranks = {int(j): r for j, r in obj["ranks"].items()}
        diffs = {}
        for j, mat in obj.get("differentials", {}).items():
            diffs[int(j)] = [[LaurentPoly.from_obj(p, nvars) for p in row] for row in mat]
        return cls(nvars, ranks, diffs)

    def __repr__(self):
        lo, hi = self.degrees()
        return f"FreeChainComplex(g={self.nvars}, ranks={{{', '.join(f'{j}: {self.rank(j)}' for j in range(lo, hi+1))}}})"


def _lp_matmul(a, b):
    if not a or not b:
        return []
    nvars = None
    for row in a:
        for p in row:
            nvars = p.nvars
            break
        if nvars is not None:
            break
    out = []
    for row in a:
        out.append([
            sum((row[k] * b[k][j] for k in range(len(b))), LaurentPoly.zero(nvars))
            for j in range(len(b[0]))
        ])
    return out


def circle_complex():
    """The chain complex of the exponential cover of C*: R --(t-1)--> R."""
    t = LaurentPoly.gen(0, 1)
    return FreeChainComplex(1, {0: 1, 1: 1}, {1: [[t - 1]]})


# ---------------------------------------------------------------------------
# tensoring with a quotient algebra


class QuotientComplex:
    """C (x)_R Q as a finite complex of k-vector spaces with deck operators."""

    def __init__(self, complex_: FreeChainComplex, q: QuotientAlgebra):
        if complex_.nvars != q.g:
            raise ArityMismatch("complex and quotient algebra arities differ")
        self.complex = complex_
        self.q = q
        self._bnd = {}
        self._deck = {}

    def dim(self, j):
        return self.complex.rank(j) * self.q.dimension

    def boundary_k(self, j):
        """k-matrix of d_j (x) Q, of shape dim(j-1) x dim(j)."""
        if j in self._bnd:
            return self._bnd[j]
        mat = self.complex.boundary(j)
        rows = self.dim(j - 1)
        cols = self.dim(j)
        if mat is None or rows == 0 or cols == 0:
            out = linalg.zeros(rows, cols)
        else:
            d = self.q.dimension
            out = linalg.zeros(rows, cols)
            for i, row in enumerate(mat):
                for l, entry in enumerate(row):
                    if entry.is_zero():
                        continue
                    block = self.q.mult_matrix(entry)
                    for a in range(d):
                        ra = out[i * d + a]
                        ba = block[a]
                        for b in range(d):
                            if ba[b]:
                                ra[l * d + b] = ba[b]
        self._bnd[j] = out
        return out

    def deck_op(self, j, i, inverse=False):
        """Multiplication by t_i^±1 on the degree-j term, block diagonal."""
        key = (j, i, inverse)
        if key in self._deck:
            return self._deck[key]
        r = self.complex.rank(j)
        block = self.q.gen_action(i, inverse)
        d = self.q.dimension
        out = linalg.zeros(r * d, r * d)
        for l in range(r):
            for a in range(d):
                row = out[l * d + a]
                src = block[a]
                for b in range(d):
                    if src[b]:
                        row[l * d + b] = src[b]
        self._deck[key] = out
        return out

    def reduce_vector(self, lpvec):
        """Laurent vector in R^{rank(j)} -> k-coordinates in Q^{rank(j)}."""
        out = []
        for p in lpvec:
            out.extend(self.q.reduce(p))
        return out


def tensor_quotient(complex_: FreeChainComplex, q: QuotientAlgebra) -> QuotientComplex:
    return QuotientComplex(complex_, q)


# ---------------------------------------------------------------------------
# finite-dimensional subquotient spaces


class FiniteQuotientSpace:
    """A subquotient (span(im) + span(reps)) / span(im) of k^ambient.

    Carries the matrices of the commuting deck actions of t_1..t_g in the
    chosen representative basis.
    """

    def __init__(self, ambient, im_basis, reps, deck_actions, provenance, q, j,
                 presentation=None):
        self.ambient = ambient
        self.im_basis = im_basis
        self.reps = reps
        self.deck_actions = deck_actions
        self.provenance = provenance
        self.q = q
        self.j = j
        self.presentation = presentation
        self._solve_cache = None

    @property
    def dim(self):
        return len(self.reps)

    def express(self, vec):
        """Coordinates of vec in the representative basis, modulo the image."""
        cols = self.im_basis + self.reps
        if not cols:
            return []
        mat = linalg.from_columns(cols, self.ambient)
        sol = linalg.solve(mat, vec)
        if sol is None:
            raise ArityMismatch("vector does not lie in the subquotient's span")
        return sol[len(self.im_basis):]

    def express_many(self, vecs):
        cols = self.im_basis + self.reps
        mat = linalg.from_columns(cols, self.ambient)
        sol = linalg.solve_matrix(mat, linalg.from_columns(vecs, self.ambient))
        if sol is None:
            raise ArityMismatch("vector does not lie in the subquotient's span")
        return [[sol[len(self.im_basis) + r][c] for r in range(self.dim)] for c in range(len(vecs))]

    def operator_from_ambient(self, op):
        """Induced matrix of an ambient operator preserving im and span."""
        if self.dim == 0:
            return []
        imgs = [linalg.mat_vec(op, rep) for rep in self.reps]
        cols = self.express_many(imgs)
        return linalg.from_columns(cols, self.dim)

    def deck_action_of(self, gamma):
        """Action of the deck element with exponent vector gamma."""
        n = self.dim
        out = linalg.identity(n)
        for i, e in enumerate(gamma):
            if e == 0:
                continue
            a = self.deck_actions[i]
            if e < 0:
                a = linalg.inverse(a)
            out = linalg.matmul(out, linalg.mat_pow(a, abs(e)))
        return out

    def to_obj(self):
        return {
            "dim": self.dim,
            "degree": self.j,
            "provenance": self.provenance,
            "deck_actions": [linalg.mat_to_json(a) for a in self.deck_actions],
        }


HomologyQuotient = FiniteQuotientSpace


def homology_of_quotient(complex_, q, j):
    """H_j(C (x) Q) with its deck actions: the homology-of-quotient route."""
    tc = tensor_quotient(complex_, q)
    b_out = tc.boundary_k(j)
    b_in = tc.boundary_k(j + 1)
    n = tc.dim(j)
    if n == 0:
        return FiniteQuotientSpace(0, [], [], [linalg.zeros(0, 0)] * q.g, "homology-of-quotient", q, j)
    if tc.dim(j - 1):
        cycles = linalg.nullspace(b_out)
    else:
        cycles = [[F1 if i == k else F0 for i in range(n)] for k in range(n)]
    span = linalg.Span(n)
    im_basis = []
    if tc.dim(j + 1):
        for col in linalg.columns(b_in):
            if span.add(col):
                im_basis.append(col)
    reps = [cycles[i] for i in linalg.extend_basis(span, cycles)]
    space = FiniteQuotientSpace(n, im_basis, reps, [], "homology-of-quotient", q, j)
    space.deck_actions = [space.operator_from_ambient(tc.deck_op(j, i)) for i in range(q.g)]
    return space


# ---------------------------------------------------------------------------
# presentations of H_j(C) over R


def presentation(complex_, j, cancel=None):
    """Finite presentation of H_j(C) over R; SNF route for g = 1."""
    cached = complex_._pres_cache.get(j)
    if cached is not None:
        return cached
    if complex_.nvars == 1:
        pres = _presentation_snf(complex_, j)
    else:
        pres = syzygy.present_homology(complex_, j, cancel)
    complex_._pres_cache[j] = pres
    return pres


def _presentation_snf(complex_, j):
    rank_j = complex_.rank(j)
    if rank_j == 0:
        return syzygy.FpModule(1, 0, [])
    dj = complex_.boundary(j)
    djp1 = complex_.boundary(j + 1)
    one = LaurentPoly.one(1)
    zero = LaurentPoly.zero(1)
    if dj is None or all(p.is_zero() for row in dj for p in row):
        gens = [[one if i == k else zero for i in range(rank_j)] for k in range(rank_j)]
        rels = []
        if djp1 is not None:
            for col in _columns_of(djp1):
                if any(not p.is_zero() for p in col):
                    rels.append(col)
        return syzygy.FpModule(1, rank_j, rels, generators=gens)
    u, uinv, d, v, vinv = snf_full(dj)
    rows = len(dj)
    cols = rank_j
    ker_idx = [k for k in range(cols) if k >= min(rows, cols) or d[k][k].is_zero()]
    gens = [[v[i][k] for i in range(cols)] for k in ker_idx]
    rels = []
    if djp1 is not None and gens:
        vinv_djp1 = _lp_matmul(vinv, djp1)
        for colno in range(len(djp1[0])):
            col = [vinv_djp1[i][colno] for i in range(cols)]
            for i in range(cols):
                if i not in ker_idx and not col[i].is_zero():
                    raise AssertionError("boundary column is not a kernel element")
            rel = [col[k] for k in ker_idx]
            if any(not p.is_zero() for p in rel):
                rels.append(rel)
    return syzygy.FpModule(1, len(gens), rels, generators=gens)


def _columns_of(mat):
    return [[mat[i][j] for i in range(len(mat))] for j in range(len(mat[0]))] if mat else []


def quotient_of_homology(complex_, j, subgroup: SubgroupSpec, m, cancel=None, pres=None):
    """H_j(C)/(m_H)^m H_j(C) with deck actions: the quotient-of-homology route."""
    if pres is None:
        pres = presentation(complex_, j, cancel)
    q = quotient_algebra(subgroup, m)
    return _coker_space(pres, q, j)


def _coker_space(pres, q, j):
    r = pres.num_gens
    d = q.dimension
    n = r * d
    if n == 0:
        return FiniteQuotientSpace(0, [], [], [linalg.zeros(0, 0)] * q.g, "quotient-of-homology", q, j, pres)
    span = linalg.Span(n)
    im_basis = []
    for rel in pres.relations:
        blocks = [q.mult_matrix(p) for p in rel]
        for b in range(d):
            col = []
            for i in range(r):
                col.extend(blocks[i][a][b] for a in range(d))
            if span.add(col):
                im_basis.append(col)
    reps = []
    for k in range(n):
        unit = [F1 if i == k else F0 for i in range(n)]
        if span.add(unit):
            reps.append(unit)
    space = FiniteQuotientSpace(n, im_basis, reps, [], "quotient-of-homology", q, j, pres)
    deck = []
    for i in range(q.g):
        block = q.gen_action(i)
        op = _blockdiag(block, r)
        deck.append(space.operator_from_ambient(op))
    space.deck_actions = deck
    return space


def _blockdiag(block, copies):
    d = len(block)
    out = linalg.zeros(copies * d, copies * d)
    for l in range(copies):
        for a in range(d):
            row = out[l * d + a]
            src = block[a]
            for b in range(d):
                if src[b]:
                    row[l * d + b] = src[b]
    return out


def induced_quotient_map(src: FiniteQuotientSpace, dst: FiniteQuotientSpace, qmap):
    """Matrix of the map induced on coker spaces by a Q-level map.

    Both spaces must come from the same presentation; qmap is the matrix of
    Q_src -> Q_dst in the algebras' bases.
    """
    if src.presentation is not dst.presentation or src.presentation is None:
        raise ArityMismatch("induced map needs spaces built on one presentation")
    r = src.presentation.num_gens
    op = _blockrect(qmap, r)
    if dst.dim == 0 or src.dim == 0:
        return linalg.zeros(dst.dim, src.dim)
    imgs = [linalg.mat_vec(op, rep) for rep in src.reps]
    cols = dst.express_many(imgs)
    return linalg.from_columns(cols, dst.dim)


def _blockrect(block, copies):
    rows = len(block)
    cols = len(block[0]) if rows else 0
    out = linalg.zeros(copies * rows, copies * cols)
    for l in range(copies):
        for a in range(rows):
            row = out[l * rows + a]
            src = block[a]
            for b in range(cols):
                if src[b]:
                    row[l * cols + b] = src[b]
    return out


# ---------------------------------------------------------------------------
# torsion / free splitting for g = 1


def torsion_free_split(complex_, j):
    """H_j(C) = R^rank (+) sum R/(p_i) over k[t^±1]; returns (rank, divisors).

    Divisors are the nonunit diagonal entries of the Smith normal form of
    the presentation matrix, normalized monic with nonzero constant term,
    each dividing the next.
    """
    if complex_.nvars != 1:
        raise MultivariateInput("torsion_free_split requires g = 1")
    pres = presentation(complex_, j)
    if pres.num_gens == 0:
        return 0, []
    if not pres.relations:
        return pres.num_gens, []
    relmat = pres.relation_matrix()
    _, d, _ = laurent_snf(relmat)
    rows = len(relmat)
    cols = len(relmat[0])
    divisors = []
    nonzero = 0
    for k in range(min(rows, cols)):
        if d[k][k].is_zero():
            continue
        nonzero += 1
        norm, _ = unit_normalize(d[k][k])
        poly, _ = to_unipoly(norm)
        if unipoly.degree(poly) >= 1:
            divisors.append(norm)
    return pres.num_gens - nonzero, divisors


def torsion_dimension(complex_, j):
    total = 0
    for p in torsion_free_split(complex_, j)[1]:
        poly, _ = to_unipoly(p)
        total += unipoly.degree(poly)
    return total


# ---------------------------------------------------------------------------
# stabilization of the natural maps (Artin-Rees search)


class StabilizationReport:
    def __init__(self, j, m, m_prime, dim_limit_image, dim_boundaries, dims_tested, certified):
        self.j = j
        self.m = m
        self.m_prime = m_prime
        self.dim_limit_image = dim_limit_image
        self.dim_boundaries = dim_boundaries
        self.dims_tested = dims_tested
        self.certified = certified

    @property
    def dim_image_in_homology(self):
        """dim of the image of H_j(C) inside H_j(C (x) Q_m)."""
        return self.dim_limit_image - self.dim_boundaries

    def to_obj(self):
        return {
            "degree": self.j,
            "m": self.m,
            "m_prime": self.m_prime,
            "dim_image_in_homology": self.dim_image_in_homology,
            "images_tested": self.dims_tested,
            "certified": self.certified,
        }

    def __repr__(self):
        return (f"StabilizationReport(m={self.m}, m_prime={self.m_prime}, "
                f"image_dim={self.dim_image_in_homology})")


def stabilization_bound(complex_, j, subgroup, m, cap=16, cancel=None):
    """Smallest m' >= m with im(H_j(C (x) Q_{m'}) -> H_j(C (x) Q_m)) equal to
    the image of H_j(C), certified by mutual containment of the two spans.

    Raises BoundNotFound past m + cap; that signals a bug, not expected
    behavior, since the Artin-Rees lemma guarantees a finite bound.
    """
    qm = quotient_algebra(subgroup, m)
    tcm = tensor_quotient(complex_, qm)
    n = tcm.dim(j)
    b_out = tcm.boundary_k(j)
    b_in = tcm.boundary_k(j + 1)
    im_cols = linalg.columns(b_in) if tcm.dim(j + 1) else []
    pres = presentation(complex_, j, cancel)
    gens = pres.generators or []
    reduced = [tcm.reduce_vector(gv) for gv in gens]
    ops = []
    for i in range(qm.g):
        ops.append(tcm.deck_op(j, i))
        ops.append(tcm.deck_op(j, i, inverse=True))
    w_inf = linalg.closure_under(reduced + im_cols, ops, n)
    boundary_span = linalg.Span(n)
    for col in im_cols:
        boundary_span.add(col)
    dims_tested = []
    for m_prime in range(m, m + cap + 1):
        if cancel is not None and cancel():
            raise BoundNotFound("stabilization search cancelled")
        qmp = quotient_algebra(subgroup, m_prime)
        tcmp = tensor_quotient(complex_, qmp)
        if tcmp.dim(j - 1):
            cycles = linalg.nullspace(tcmp.boundary_k(j))
        else:
            nn = tcmp.dim(j)
            cycles = [[F1 if i == k else F0 for i in range(nn)] for k in range(nn)]
        proj = _blockrect(qmp.truncation_projection(qm), complex_.rank(j))
        w_mp = linalg.Span(n)
        for z in cycles:
            w_mp.add(linalg.mat_vec(proj, z))
        for col in im_cols:
            w_mp.add(col)
        dims_tested.append(w_mp.dim)
        forward = all(w_inf.contains(v) for v in w_mp.basis())
        backward = all(w_mp.contains(v) for v in w_inf.basis())
        if forward and backward:
            return StabilizationReport(j, m, m_prime, w_inf.dim, boundary_span.dim,
                                       dims_tested, True)
    raise BoundNotFound(f"no stabilization level found up to m + {cap}")


# ---------------------------------------------------------------------------
# homology/cohomology duality dimensions


def duality_dims(complex_, subgroup, m, j):
    """(dim H_j(C (x) Q), dim H^j(Hom(C, Q*))) for the dual module Q*.

    Q* carries the transpose action; the cochain complex is assembled
    independently of the homology side, and the two dimensions are asserted
    equal before returning.
    """
    q = quotient_algebra(subgroup, m)
    hq = homology_of_quotient(complex_, q, j)
    dim_hom = hq.dim

    d = q.dimension
    mat_in = complex_.boundary(j + 1)   # gives delta^j : Hom(C_j) -> Hom(C_{j+1})
    mat_out = complex_.boundary(j)      # gives delta^{j-1}
    dim_j = complex_.rank(j) * d

    delta_j = _hom_matrix(mat_in, q, complex_.rank(j + 1), complex_.rank(j))
    delta_jm1 = _hom_matrix(mat_out, q, complex_.rank(j), complex_.rank(j - 1))
    kernel_dim = dim_j - linalg.rank(delta_j)
    image_dim = linalg.rank(delta_jm1)
    dim_coh = kernel_dim - image_dim
    if dim_hom != dim_coh:
        raise AssertionError(f"duality violation: {dim_hom} != {dim_coh}")
    return dim_hom, dim_coh


def _hom_matrix(bnd, q, rank_target, rank_source):
    """k-matrix of Hom(C_source, Q*) -> Hom(C_target, Q*), phi -> phi o d.

    bnd is the matrix of d : C_target -> C_source over R (rank_source rows,
    rank_target columns); entry action on the dual module is the transpose
    of multiplication.
    """
    d = q.dimension
    rows = rank_target * d
    cols = rank_source * d
    if bnd is None or rows == 0 or cols == 0:
        return linalg.zeros(rows, cols) if rows and cols else []
    out = linalg.zeros(rows, cols)
    for l in range(rank_source):
        for i in range(rank_target):
            entry = bnd[l][i]
            if entry.is_zero():
                continue
            block = linalg.transpose(q.mult_matrix(entry))
            for a in range(d):
                row = out[i * d + a]
                src = block[a]
                for b in range(d):
                    if src[b]:
                        row[l * d + b] = src[b]
    return out
