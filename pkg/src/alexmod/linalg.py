"""Exact rational linear algebra.

Matrices are lists of rows, entries `fractions.Fraction`.  The elimination
core (`rref`) is provided by the compiled extension `_ratcore` when it was
built, with `_ratcore_py` as the drop-in fallback; set ALEXMOD_PURE=1 to
force the fallback.  Everything else here is thin bookkeeping on top of it.
"""

import os
from fractions import Fraction

if os.environ.get("ALEXMOD_PURE") == "1":
    from . import _ratcore_py as _core
else:
    try:
        from . import _ratcore as _core  # type: ignore[attr-defined]
    except ImportError:
        from . import _ratcore_py as _core

rref = _core.rref

F0 = Fraction(0)
F1 = Fraction(1)


def backend() -> str:
    """Name of the elimination backend in use ('compiled' or 'pure-python')."""
    return _core.BACKEND


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m, n):
    return [[F0] * n for _ in range(m)]


def identity(n):
    return [[F1 if i == j else F0 for j in range(n)] for i in range(n)]


def transpose(mat):
    return [list(col) for col in zip(*mat)] if mat else []


def matmul(a, b):
    if not a or not b:
        return []
    n = len(b)
    p = len(b[0])
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([sum(row[k] * col[k] for k in range(n)) for col in bt])
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = Fraction(c)
    return [[x * c for x in row] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def mat_pow(a, k):
    n = len(a)
    out = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def rank(mat):
    if not mat or not mat[0]:
        return 0
    return len(rref(mat)[1])


def nullspace(mat):
    """Basis of the right kernel, as a list of vectors."""
    if not mat:
        return []
    n = len(mat[0])
    if n == 0:
        return []
    red, pivots = rref(mat)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [F0] * n
        v[free] = F1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        basis.append(v)
    return basis


def solve(mat, vec):
    """One solution of mat @ x = vec, or None if inconsistent."""
    sols = solve_matrix(mat, [[x] for x in vec])
    if sols is None:
        return None
    return [row[0] for row in sols]


def solve_matrix(mat, rhs):
    """Solve mat @ X = rhs for all columns at once; None if any is inconsistent."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    k = len(rhs[0]) if rhs else 0
    if m == 0:
        if any(any(x != 0 for x in row) for row in rhs):
            return None
        return [[F0] * k for _ in range(n)]
    aug = [mat[i] + rhs[i] for i in range(m)]
    red, pivots = rref(aug)
    for pc in pivots:
        if pc >= n:
            return None
    sol = [[F0] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        for j in range(k):
            sol[pc][j] = red[r][n + j]
    return sol


def inverse(mat):
    """Inverse matrix, or None if singular."""
    n = len(mat)
    inv = solve_matrix(mat, identity(n))
    if inv is None:
        return None
    return inv


def columns(mat):
    return [list(col) for col in zip(*mat)] if mat else []


def from_columns(cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows)] if nrows else []
    return [list(row) for row in zip(*cols)]


class Span:
    """Incrementally maintained row-echelon span of rational vectors."""

    def __init__(self, dim):
        self.ambient = dim
        self.rows = []  # kept sorted by lead index, lead entry 1

    @property
    def dim(self):
        return len(self.rows)

    def _reduce(self, vec):
        v = list(vec)
        for lead, row in self.rows:
            if v[lead] != 0:
                c = v[lead]
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def add(self, vec):
        """Add a vector; returns True if it enlarged the span."""
        v = self._reduce(vec)
        lead = next((i for i, x in enumerate(v) if x != 0), None)
        if lead is None:
            return False
        c = v[lead]
        v = [x / c for x in v]
        for i, (l0, row) in enumerate(self.rows):
            if row[lead] != 0:
                c2 = row[lead]
                self.rows[i] = (l0, [x - c2 * y for x, y in zip(row, v)])
        self.rows.append((lead, v))
        self.rows.sort(key=lambda t: t[0])
        return True

    def contains(self, vec):
        return all(x == 0 for x in self._reduce(vec))

    def contains_all(self, vecs):
        return all(self.contains(v) for v in vecs)

    def basis(self):
        return [row[:] for _, row in self.rows]


def column_space(mat):
    """Span of the columns of mat."""
    sp = Span(len(mat))
    for col in columns(mat):
        sp.add(col)
    return sp


def extend_basis(span, candidates):
    """Indices of candidate vectors that extend `span`, adding them in order."""
    chosen = []
    for i, v in enumerate(candidates):
        if span.add(v):
            chosen.append(i)
    return chosen


def closure_under(vectors, operators, dim):
    """Smallest subspace containing `vectors` invariant under the operators."""
    sp = Span(dim)
    queue = [v for v in vectors if sp.add(v)]
    while queue:
        v = queue.pop()
        for op in operators:
            w = mat_vec(op, v)
            if sp.add(w):
                queue.append(w)
    return sp


def intersect_subspaces(basis_a, basis_b, dim):
    """Basis of the intersection of two subspaces given by spanning vectors."""
    if not basis_a or not basis_b:
        return []
    # v in A cap B  <=>  v = A x = B y; solve [A | -B] z = 0.
    a_cols = from_columns(basis_a, dim)
    b_cols = from_columns(basis_b, dim)
    stacked = [a_cols[i] + [-x for x in b_cols[i]] for i in range(dim)]
    out = Span(dim)
    for z in nullspace(stacked):
        x = z[: len(basis_a)]
        vec = [sum(basis_a[k][i] * x[k] for k in range(len(basis_a))) for i in range(dim)]
        out.add(vec)
    return out.basis()


def mat_to_json(mat):
    return [[[x.numerator, x.denominator] for x in row] for row in mat]


def mat_from_json(obj):
    return [[Fraction(n, d) for n, d in row] for row in obj]
