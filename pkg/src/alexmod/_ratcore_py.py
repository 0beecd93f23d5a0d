"""Pure-Python exact elimination kernel.

Same algorithm as the compiled module `_ratcore`: rows are cleared to
integers, eliminated fraction-free (cross-multiplication with gcd
renormalisation), then pivots are scaled back to 1 over Fraction.  Keeping
the two implementations line-for-line parallel is deliberate; the compiled
one only adds static typing of the loop indices.
"""

from fractions import Fraction
from math import gcd

BACKEND = "pure-python"


def _clear_row(row):
    den = 1
    for x in row:
        d = x.denominator
        den = den // gcd(den, d) * d
    out = [int(x.numerator * (den // x.denominator)) for x in row]
    g = 0
    for v in out:
        g = gcd(g, v)
    if g > 1:
        out = [v // g for v in out]
    return out


def rref(rows):
    """Reduced row echelon form of a matrix of Fractions.

    Returns (new_rows, pivot_columns).  Pivot choice is positional (first
    nonzero), so the output is deterministic.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [_clear_row(row) for row in rows]
    pivots = []
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
                    ri[j] //= g
        pivots.append(col)
        prow += 1
        if prow == m:
            break
    out = []
    for i in range(m):
        if i < len(pivots):
            p = mat[i][pivots[i]]
            out.append([Fraction(v, p) for v in mat[i]])
        else:
            out.append([Fraction(0)] * n)
    return out, tuple(pivots)
