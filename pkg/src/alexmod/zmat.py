"""Small integer-matrix utilities: determinant, column HNF, integer SNF.

Used for subgroup lattices of Z^g: coset boxes, lattice membership, the
exponent of the quotient group, and surjectivity checks for maps to Z^g.
"""

from math import gcd

from .errors import SingularSubgroup


def det_int(mat):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf_columns(basis):
    """Column Hermite normal form of a nonsingular integer matrix.

    Returns H, lower triangular with positive diagonal and off-diagonal row
    entries reduced into [0, diagonal); the columns of H generate the same
    lattice as the columns of `basis`.
    """
    g = len(basis)
    if det_int(basis) == 0:
        raise SingularSubgroup("subgroup basis matrix is singular")
    h = [row[:] for row in basis]

    def col_sub(dst, src, q):
        for r in range(g):
            h[r][dst] -= q * h[r][src]

    for i in range(g):
        # euclid on row i over columns >= i until only the pivot survives
        while True:
            cand = [j for j in range(i, g) if h[i][j] != 0]
            j0 = min(cand, key=lambda j: abs(h[i][j]))
            if j0 != i:
                for r in range(g):
                    h[r][i], h[r][j0] = h[r][j0], h[r][i]
            if h[i][i] < 0:
                for r in range(g):
                    h[r][i] = -h[r][i]
            done = True
            for j in range(i + 1, g):
                if h[i][j] != 0:
                    col_sub(j, i, h[i][j] // h[i][i])
                    if h[i][j] != 0:
                        done = False
            if done:
                break
        # entries left of the pivot in row i; reduce into [0, pivot)
        for j in range(i):
            q = h[i][j] // h[i][i]
            if q:
                col_sub(j, i, q)
    return h


def hnf_reduce(h, vec):
    """Write vec = c + H q with c in the canonical box; returns (c, q)."""
    g = len(h)
    c = list(vec)
    q = [0] * g
    for i in range(g):
        qi = c[i] // h[i][i]
        q[i] = qi
        if qi:
            for r in range(i, g):
                c[r] -= qi * h[r][i]
    return c, q


def smith_diagonal(mat):
    """Invariant factors (diagonal of the integer Smith normal form)."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [row[:] for row in mat]
    diag = []
    top = 0
    while top < min(m, n):
        # find a nonzero pivot
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        a[top], a[i0] = a[i0], a[top]
        for row in a:
            row[top], row[j0] = row[j0], row[top]
        while True:
            # clear column
            for i in range(top + 1, m):
                while a[i][top] != 0:
                    if abs(a[i][top]) < abs(a[top][top]):
                        a[top], a[i] = a[i], a[top]
                    q = a[i][top] // a[top][top]
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
            # clear row
            for j in range(top + 1, n):
                while a[top][j] != 0:
                    if abs(a[top][j]) < abs(a[top][top]):
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                    q = a[top][j] // a[top][top]
                    for row in a:
                        row[j] -= q * row[top]
            if all(a[i][top] == 0 for i in range(top + 1, m)):
                if all(a[top][j] == 0 for j in range(top + 1, n)):
                    break
        # divisibility fix: pivot must divide the rest of the block
        bad = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % a[top][top] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(top, n):
                a[top][j] += a[bad][j]
            continue
        diag.append(abs(a[top][top]))
        top += 1
    return diag


def quotient_exponent(basis):
    """Exponent of Z^g / (column lattice of basis): the last invariant factor."""
    diag = smith_diagonal(basis)
    if len(diag) < len(basis) or any(d == 0 for d in diag):
        raise SingularSubgroup("subgroup basis matrix is singular")
    return diag[-1]


def spans_zg(columns_mat, g):
    """True if the integer columns generate all of Z^g."""
    if not columns_mat or len(columns_mat) != g:
        return g == 0
    diag = smith_diagonal(columns_mat)
    return len(diag) == g and all(d == 1 for d in diag)


def lcm_int(a, b):
    return a // gcd(a, b) * b if a and b else abs(a or b)
