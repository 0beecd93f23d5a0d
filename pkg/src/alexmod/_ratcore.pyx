# cython: language_level=3
"""Compiled exact elimination kernel.

Mirror of `_ratcore_py`; entries stay arbitrary-precision Python ints, the
speedup comes from typed loop indices and reduced interpreter overhead in
the inner elimination loops.
"""

from fractions import Fraction
from math import gcd

BACKEND = "compiled"


cdef list _clear_row(row):
    cdef Py_ssize_t j, n = len(row)
    den = 1
    for x in row:
        d = x.denominator
        den = den // gcd(den, d) * d
    cdef list out = [0] * n
    for j in range(n):
        x = row[j]
        out[j] = int(x.numerator * (den // x.denominator))
    g = 0
    for j in range(n):
        g = gcd(g, out[j])
    if g > 1:
        for j in range(n):
            out[j] = out[j] // g
    return out


def rref(rows):
    """Reduced row echelon form of a matrix of Fractions.

    Returns (new_rows, pivot_columns); identical contract and pivoting to
    the pure-Python implementation.
    """
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t col, i, j, prow, sel
    cdef list mat = [_clear_row(row) for row in rows]
    cdef list pivots = []
    cdef list ri, rp
    prow = 0
    for col in range(n):
        sel = -1
        for i in range(prow, m):
            if mat[i][col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            mat[prow], mat[sel] = mat[sel], mat[prow]
        rp = mat[prow]
        p = rp[col]
        for i in range(m):
            if i == prow:
                continue
            ri = mat[i]
            a = ri[col]
            if a == 0:
                continue
            for j in range(n):
                ri[j] = ri[j] * p - rp[j] * a
            g = 0
            for j in range(n):
                g = gcd(g, ri[j])
            if g > 1:
                for j in range(n):
                    ri[j] = ri[j] // g
        pivots.append(col)
        prow += 1
        if prow == m:
            break
    cdef list out = []
    for i in range(m):
        if i < len(pivots):
            p = mat[i][pivots[i]]
            out.append([Fraction(v, p) for v in mat[i]])
        else:
            out.append([Fraction(0)] * n)
    return out, tuple(pivots)
