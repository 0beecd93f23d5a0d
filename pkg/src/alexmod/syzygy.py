"""Groebner-basis engine for submodules of free modules over k[t1..tg].

This is the multivariable workhorse behind kernels of Laurent matrices,
syzygies, saturation at the coordinate monomial, and finite presentations
of homology modules.  Laurent input is handled by clearing denominators
with unit monomials; kernels and homology presentations computed over the
polynomial ring remain valid over the Laurent ring because localization is
flat, and honest Laurent-module membership is recovered by saturating at
t1*...*tg first.

Vectors are dicts mapping (position, monomial) to rational coefficients.
The term order is position-over-term with graded reverse lexicographic
monomial comparison; Buchberger runs with the plain same-position pair set
(the coprime-lead shortcut is not sound for modules and is not used).
"""

from fractions import Fraction

from .errors import ComputationCancelled
from .laurent import LaurentPoly

F0 = Fraction(0)
F1 = Fraction(1)


def _grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


class TermOrder:
    """POT + grevlex; with elim_last=True the last variable is eliminated."""

    def __init__(self, elim_last=False):
        self.elim_last = elim_last

    def key(self, term):
        pos, mono = term
        if self.elim_last:
            return (mono[-1], -pos, _grevlex_key(mono))
        return (-pos, _grevlex_key(mono))


POT = TermOrder()
ELIM_LAST = TermOrder(elim_last=True)


def _lead(vec, order):
    return max(vec, key=order.key)


def _divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def _mono_sub(m1, m2):
    return tuple(a - b for a, b in zip(m1, m2))


def _mono_add(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def _mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def vec_scale_shift(vec, coeff, mono):
    return {(p, _mono_add(m, mono)): c * coeff for (p, m), c in vec.items()}


def vec_sub(a, b):
    out = dict(a)
    for term, c in b.items():
        val = out.get(term, F0) - c
        if val:
            out[term] = val
        else:
            out.pop(term, None)
    return out


def _monic(vec, order):
    lc = vec[_lead(vec, order)]
    if lc == 1:
        return vec
    return {t: c / lc for t, c in vec.items()}


def normal_form(vec, basis, order, cancel=None):
    """Fully reduce vec modulo the list of (vector, lead, leadcoeff) triples."""
    work = dict(vec)
    rem = {}
    while work:
        if cancel is not None and cancel():
            raise ComputationCancelled("groebner reduction cancelled")
        term = max(work, key=order.key)
        coeff = work[term]
        pos, mono = term
        hit = None
        for entry in basis:
            lpos, lmono = entry[1]
            if lpos == pos and _divides(lmono, mono):
                hit = entry
                break
        if hit is None:
            rem[term] = coeff
            del work[term]
        else:
            gvec, (lp, lm), lc = hit
            work = vec_sub(work, vec_scale_shift(gvec, coeff / lc, _mono_sub(mono, lm)))
    return rem


def groebner(gens, order=POT, cancel=None):
    """Interreduced Groebner basis of the module generated by gens."""
    basis = []
    for v in sorted((g for g in gens if g), key=lambda g: order.key(_lead(g, order))):
        v = _monic(v, order)
        basis.append((v, _lead(v, order), F1))
    pairs = set()

    def add_pairs(new_idx):
        for i in range(new_idx):
            if basis[i][1][0] == basis[new_idx][1][0]:
                pairs.add((i, new_idx))

    for i in range(len(basis)):
        add_pairs(i)

    def pair_key(pair):
        i, j = pair
        lcm = _mono_lcm(basis[i][1][1], basis[j][1][1])
        return (sum(lcm), lcm, i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        (fi, (pi, mi), _), (fj, (pj, mj), _) = basis[i], basis[j]
        lcm = _mono_lcm(mi, mj)
        s = vec_sub(
            vec_scale_shift(fi, F1, _mono_sub(lcm, mi)),
            vec_scale_shift(fj, F1, _mono_sub(lcm, mj)),
        )
        h = normal_form(s, basis, order, cancel)
        if h:
            h = _monic(h, order)
            basis.append((h, _lead(h, order), F1))
            add_pairs(len(basis) - 1)

    return _interreduce(basis, order, cancel)


def _interreduce(basis, order, cancel=None):
    # drop elements whose lead is divisible by another lead, then tail-reduce
    kept = []
    for idx, (v, lead, lc) in enumerate(basis):
        redundant = False
        for jdx, (w, lead2, _) in enumerate(basis):
            if jdx == idx:
                continue
            if lead2[0] == lead[0] and _divides(lead2[1], lead[1]):
                if _grevlex_key(lead2[1]) < _grevlex_key(lead[1]) or jdx < idx:
                    redundant = True
                    break
        if not redundant:
            kept.append((v, lead, lc))
    out = []
    for idx, (v, lead, lc) in enumerate(kept):
        others = [kept[j] for j in range(len(kept)) if j != idx]
        h = normal_form(v, others, order, cancel)
        if h:
            out.append(_monic(h, order))
    out.sort(key=lambda g: order.key(_lead(g, order)))
    return out


# ---------------------------------------------------------------------------
# conversions between LaurentPoly vectors and polynomial dict-vectors


def _clear_vector(lpvec):
    """Laurent vector -> (poly dict-vector, shift exponents); unit rescale only."""
    nvars = lpvec[0].nvars
    mins = [0] * nvars
    for p in lpvec:
        for e in p.terms:
            for i, x in enumerate(e):
                mins[i] = min(mins[i], x)
    shift = tuple(-x for x in mins)
    out = {}
    for pos, p in enumerate(lpvec):
        for e, c in p.terms.items():
            out[(pos, _mono_add(e, shift))] = c
    return out


def _vec_to_laurent(vec, length, nvars):
    polys = [LaurentPoly.zero(nvars) for _ in range(length)]
    acc = [{} for _ in range(length)]
    for (pos, mono), c in vec.items():
        acc[pos][mono] = c
    for i, terms in enumerate(acc):
        if terms:
            polys[i] = LaurentPoly(nvars, terms)
    return polys


def _matrix_columns(matrix, nvars):
    ncols = len(matrix[0]) if matrix else 0
    cols = []
    for j in range(ncols):
        cols.append([matrix[i][j] for i in range(len(matrix))])
    return cols


def lp_matvec(matrix, vec):
    n = len(matrix)
    nvars = vec[0].nvars if vec else 0
    out = []
    for i in range(n):
        acc = LaurentPoly.zero(nvars)
        for a, x in zip(matrix[i], vec):
            acc = acc + a * x
        out.append(acc)
    return out


def kernel(matrix, cancel=None):
    """Generators of the kernel of a matrix over the Laurent ring.

    The columns of the returned list are Laurent vectors v with M v = 0,
    generating ker(M) as a module; each is verified exactly against M.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if ncols == 0:
        return []
    nvars = matrix[0][0].nvars
    if all(p.is_zero() for row in matrix for p in row):
        return [[LaurentPoly.one(nvars) if i == j else LaurentPoly.zero(nvars) for i in range(ncols)] for j in range(ncols)]
    # clearing rows by unit monomials leaves the kernel unchanged
    cleared = []
    for row in matrix:
        mins = [0] * nvars
        for p in row:
            for e in p.terms:
                for i, x in enumerate(e):
                    mins[i] = min(mins[i], x)
        shift = tuple(-x for x in mins)
        cleared.append([p.shift(shift) for p in row])
    cols = _matrix_columns(cleared, nvars)
    aug = []
    for j, col in enumerate(cols):
        v = {(pos, e): c for pos, p in enumerate(col) for e, c in p.terms.items()}
        v[(nrows + j, (0,) * nvars)] = F1
        aug.append(v)
    gb = groebner(aug, POT, cancel)
    gens = []
    for g in gb:
        if all(pos >= nrows for pos, _ in g):
            tail = {(pos - nrows, m): c for (pos, m), c in g.items()}
            gens.append(_vec_to_laurent(tail, ncols, nvars))
    for v in gens:
        if any(not p.is_zero() for p in lp_matvec(matrix, v)):
            raise AssertionError("kernel generator fails M v = 0")
    return gens


def syzygies(vectors, ambient, nvars, cancel=None):
    """Syzygy module of a list of Laurent vectors inside R^ambient."""
    if not vectors:
        return []
    matrix = [[vectors[j][i] for j in range(len(vectors))] for i in range(ambient)]
    return kernel(matrix, cancel)


def lift(vectors, target, cancel=None):
    """Coefficients a with sum a_j vectors_j = target, or None.

    Both sides are cleared by unit monomials first, so the lift is over the
    Laurent ring whenever the generated module is saturated or the target
    is a polynomial combination of the generators (the only uses here).
    """
    if not vectors:
        return None if any(not p.is_zero() for p in target) else []
    ambient = len(target)
    nvars = target[0].nvars
    aug = []
    for j, col in enumerate(vectors):
        v = _clear_vector(col)
        shift_unit = _shift_of(col)
        v[(ambient + j, (0,) * nvars)] = F1
        aug.append((v, shift_unit))
    gb = groebner([v for v, _ in aug], POT, cancel)
    tgt = _clear_vector(target)
    tshift = _shift_of(target)
    rem = normal_form(tgt, [(g, _lead(g, POT), g[_lead(g, POT)]) for g in gb], POT, cancel)
    if any(pos < ambient for pos, _ in rem):
        return None
    coeffs = [LaurentPoly.zero(nvars) for _ in vectors]
    for (pos, mono), c in rem.items():
        j = pos - ambient
        coeffs[j] = coeffs[j] - LaurentPoly(nvars, {mono: c})
    # undo the unit clearings: target was scaled by t^tshift, generator j by t^{sj}
    out = []
    for j, (v, sj) in enumerate(aug):
        adj = tuple(s - t for s, t in zip(sj, tshift))
        out.append(coeffs[j].shift(adj))
    return out


def _shift_of(lpvec):
    nvars = lpvec[0].nvars
    mins = [0] * nvars
    for p in lpvec:
        for e in p.terms:
            for i, x in enumerate(e):
                mins[i] = min(mins[i], x)
    return tuple(-x for x in mins)


def saturate(vectors, ambient, nvars, cancel=None):
    """Saturation {v : (t1...tg)^N v in M for some N} of the module M.

    Implemented by the standard extra-variable trick: adjoin y, add the
    relations (1 - y*t1*...*tg) e_i, eliminate y and read off the y-free
    part of the Groebner basis.  Idempotent; output vectors are polynomial.
    """
    if not vectors:
        return []
    ext = []
    for col in vectors:
        v = _clear_vector(col)
        ext.append({(pos, m + (0,)): c for (pos, m), c in v.items()})
    yf = (1,) * nvars + (1,)
    for i in range(ambient):
        ext.append({(i, (0,) * (nvars + 1)): F1, (i, yf): -F1})
    gb = groebner(ext, ELIM_LAST, cancel)
    out = []
    for g in gb:
        if all(m[-1] == 0 for _, m in g):
            stripped = {(pos, m[:-1]): c for (pos, m), c in g.items()}
            out.append(_vec_to_laurent(stripped, ambient, nvars))
    return out


def module_contains(vectors, target, ambient, nvars, cancel=None):
    """Laurent-module membership of target in the span of vectors."""
    sat = saturate(vectors, ambient, nvars, cancel)
    if not sat:
        return all(p.is_zero() for p in target)
    return lift(sat, target, cancel) is not None


class FpModule:
    """Finitely presented module: generators and a matrix of relation columns."""

    __slots__ = ("nvars", "num_gens", "relations", "generators")

    def __init__(self, nvars, num_gens, relations, generators=None):
        self.nvars = nvars
        self.num_gens = num_gens
        self.relations = relations  # list of columns, each a list of LaurentPoly
        self.generators = generators  # optional ambient representatives

    def relation_matrix(self):
        """num_gens x num_relations matrix."""
        cols = self.relations
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.num_gens)]

    def to_obj(self):
        return {
            "nvars": self.nvars,
            "num_gens": self.num_gens,
            "relations": [[p.to_obj() for p in col] for col in self.relations],
        }

    def __repr__(self):
        return f"FpModule(gens={self.num_gens}, rels={len(self.relations)}, g={self.nvars})"


def present_homology(complex_, j, cancel=None):
    """Finite presentation of H_j of a bounded free complex over the Laurent ring.

    Generators are kernel generators of d_j; relations are the lifts of the
    columns of d_{j+1} together with the syzygies among the generators.
    """
    nvars = complex_.nvars
    rank_j = complex_.rank(j)
    if rank_j == 0:
        return FpModule(nvars, 0, [])
    dj = complex_.boundary(j)
    djp1 = complex_.boundary(j + 1)
    if dj is None or all(p.is_zero() for row in dj for p in row):
        gens = [[LaurentPoly.one(nvars) if i == k else LaurentPoly.zero(nvars) for i in range(rank_j)] for k in range(rank_j)]
    else:
        gens = kernel(dj, cancel)
    if not gens:
        return FpModule(nvars, 0, [])
    rels = []
    if djp1 is not None:
        for col in _matrix_columns(djp1, nvars):
            if all(p.is_zero() for p in col):
                continue
            coeffs = lift(gens, col, cancel)
            if coeffs is None:
                raise AssertionError("boundary column failed to lift into the kernel")
            rels.append(coeffs)
    for syz in syzygies(gens, rank_j, nvars, cancel):
        rels.append(syz)
    return FpModule(nvars, len(gens), rels, generators=gens)
