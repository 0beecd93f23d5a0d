"""Dense univariate polynomials over the rationals.

Coefficient lists run from degree 0 upward with no trailing zeros; the zero
polynomial is [].  These back the g = 1 fast paths (Smith normal form,
torsion splitting) and all minimal/cyclotomic polynomial work in `deck`.
"""

from fractions import Fraction
from functools import lru_cache

F0 = Fraction(0)
F1 = Fraction(1)


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def from_ints(coeffs):
    return trim([Fraction(c) for c in coeffs])


def degree(p):
    return len(p) - 1 if p else -1


def is_zero(p):
    return not p


def is_constant(p):
    return len(p) <= 1


def constant(c):
    c = Fraction(c)
    return [c] if c else []


def add(p, q):
    n = max(len(p), len(q))
    out = [F0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p, q):
    n = max(len(p), len(q))
    out = [F0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return trim(out)


def neg(p):
    return [-c for c in p]


def mul(p, q):
    if not p or not q:
        return []
    out = [F0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    c = Fraction(c)
    if c == 0:
        return []
    return [a * c for a in p]


def divmod_poly(p, q):
    """Polynomial division; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = degree(q)
    lead = q[-1]
    quo = [F0] * max(0, len(p) - dq)
    while degree(rem) >= dq:
        shift = degree(rem) - dq
        c = rem[-1] / lead
        quo[shift] = c
        for i in range(len(q)):
            rem[shift + i] -= c * q[i]
        trim(rem)
    return trim(quo), rem


def divides(q, p):
    if not p:
        return True
    if not q:
        return False
    return not divmod_poly(p, q)[1]


def monic(p):
    if not p:
        return []
    lead = p[-1]
    if lead == 1:
        return list(p)
    return [c / lead for c in p]


def gcd_poly(p, q):
    a, b = list(p), list(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def xgcd_poly(p, q):
    """Extended gcd: returns (g, u, v) monic g with u p + v q = g."""
    a, b = list(p), list(q)
    ua, va = [F1], []
    ub, vb = [], [F1]
    while b:
        quo, rem = divmod_poly(a, b)
        a, b = b, rem
        ua, ub = ub, sub(ua, mul(quo, ub))
        va, vb = vb, sub(va, mul(quo, vb))
    if not a:
        return [], [], []
    lead = a[-1]
    return monic(a), scale(ua, 1 / lead), scale(va, 1 / lead)


def lcm_poly(p, q):
    if not p or not q:
        return []
    return monic(divmod_poly(mul(p, q), gcd_poly(p, q))[0])


def derivative(p):
    return trim([p[i] * i for i in range(1, len(p))])


def squarefree_part(p):
    if degree(p) <= 0:
        return monic(p)
    return monic(divmod_poly(p, gcd_poly(p, derivative(p)))[0])


def eval_at(p, x):
    acc = F0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_mod(p, q, modulus):
    """p(q) reduced modulo `modulus`, by Horner."""
    acc = []
    for c in reversed(p):
        acc = add(mul(acc, q), constant(c))
        acc = divmod_poly(acc, modulus)[1]
    return acc


def pow_poly(p, k):
    out = [F1]
    base = list(p)
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def x_power_minus_one(n):
    out = [F0] * (n + 1)
    out[0] = -F1
    out[n] = F1
    return out


@lru_cache(maxsize=None)
def _cyclotomic_cached(d):
    p = x_power_minus_one(d)
    for e in range(1, d):
        if d % e == 0:
            p = divmod_poly(p, list(_cyclotomic_cached(e)))[0]
    return tuple(p)


def cyclotomic(d):
    """The d-th cyclotomic polynomial."""
    return list(_cyclotomic_cached(d))


def euler_phi(d):
    out = d
    p = 2
    n = d
    while p * p <= n:
        if n % p == 0:
            out -= out // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out -= out // n
    return out


def to_string(p, var="t"):
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out
