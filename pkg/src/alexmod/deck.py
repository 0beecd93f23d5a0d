"""Deck-transformation operators on finite-dimensional quotients.

Jordan-Chevalley decomposition through the explicit polynomial construction
(the semisimple part is P(A) for a polynomial P with zero constant term),
quasi-unipotence orders, logarithms, and joint generalized eigenspace
decompositions over Q with cyclotomic factors; complex dimensions are
reported by Galois counting (each primitive d-th root of unity receives
dim E_{Phi_d} / phi(d)).
"""

from fractions import Fraction

from . import linalg, unipoly
from .errors import NonCommuting, NotQuasiUnipotent, SingularOperator
from .laurent import QuotientAlgebra  # noqa: F401  (re-exported context type)

F0 = Fraction(0)
F1 = Fraction(1)


def minimal_polynomial(a):
    """Monic minimal polynomial of a rational square matrix."""
    n = len(a)
    if n == 0:
        return [F1]
    mu = [F1]
    for start in range(n):
        e = [F1 if i == start else F0 for i in range(n)]
        # minimal dependence in the Krylov chain of e
        span = linalg.Span(n)
        chain = [e]
        v = e
        while span.add(v):
            v = linalg.mat_vec(a, v)
            chain.append(v)
        kdim = span.dim
        mat = linalg.from_columns(chain[:kdim], n)
        coeffs = linalg.solve(mat, chain[kdim])
        local = [-c for c in coeffs] + [F1]
        mu = unipoly.lcm_poly(mu, local)
        if unipoly.degree(mu) == n:
            break
    return mu


def _semisimple_poly(mu):
    """P with P(0) = 0 and P(A) the semisimple part of A, for min poly mu.

    Newton iteration on the squarefree part q of mu: starting from the
    identity polynomial, P <- P - q(P)/q'(P) computed modulo mu, which
    converges because q(P) is nilpotent modulo mu.  The zero constant term
    is arranged at the end by subtracting a multiple of mu (possible since
    the operator is invertible, so mu(0) != 0).
    """
    q = unipoly.squarefree_part(mu)
    qd = unipoly.derivative(q)
    p = [F0, F1]
    for _ in range(len(mu) + 1):
        c = unipoly.compose_mod(q, p, mu)
        if unipoly.is_zero(c):
            break
        d = unipoly.compose_mod(qd, p, mu)
        g, dinv, _ = unipoly.xgcd_poly(d, mu)
        if unipoly.degree(g) != 0:
            raise AssertionError("q'(P) not invertible modulo mu")
        dinv = unipoly.scale(dinv, 1 / g[0])
        p = unipoly.sub(p, unipoly.mul(c, dinv))
        p = unipoly.divmod_poly(p, mu)[1]
    else:
        raise AssertionError("semisimple Newton iteration failed to converge")
    p0 = unipoly.eval_at(p, F0)
    if p0 != 0:
        mu0 = unipoly.eval_at(mu, F0)
        p = unipoly.sub(p, unipoly.scale(mu, p0 / mu0))
    return p


def poly_of_matrix(p, a):
    """p(A) by Horner."""
    n = len(a)
    out = linalg.zeros(n, n)
    for c in reversed(p):
        out = linalg.matmul(out, a)
        if c:
            for i in range(n):
                out[i][i] += c
    return out


def jordan_chevalley(a):
    """A = ss * u with ss semisimple, u unipotent, commuting; both rational.

    ss is a polynomial in A with zero constant term.  Raises
    SingularOperator for non-invertible input (deck actions always are).
    """
    n = len(a)
    mu = minimal_polynomial(a)
    if unipoly.eval_at(mu, F0) == 0:
        raise SingularOperator("operator is singular")
    p = _semisimple_poly(mu)
    ss = poly_of_matrix(p, a)
    u = linalg.solve_matrix(ss, a)
    if u is None:
        raise AssertionError("semisimple part not invertible")
    _check_unipotent(u)
    if not linalg.mat_eq(linalg.matmul(ss, u), linalg.matmul(u, ss)):
        raise AssertionError("Jordan-Chevalley parts do not commute")
    return ss, u


def jc_polynomial(a):
    """The polynomial P (zero constant term) with semisimple part P(A)."""
    return _semisimple_poly(minimal_polynomial(a))


def _check_unipotent(u):
    n = len(u)
    x = linalg.mat_sub(u, linalg.identity(n))
    power = x
    for _ in range(n):
        if linalg.is_zero_matrix(power):
            return
        power = linalg.matmul(power, x)
    if not linalg.is_zero_matrix(power):
        raise AssertionError("unipotent part fails nilpotency")


def _candidate_orders(bound_deg, cap):
    # phi(d) >= sqrt(d/2), so phi(d) <= D forces d <= 2 D^2
    limit = min(cap, max(6, 2 * bound_deg * bound_deg))
    return [d for d in range(1, limit + 1) if unipoly.euler_phi(d) <= bound_deg]


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def cyclotomic_multiplicities(poly, candidates):
    """Factor poly as prod Phi_d^{e_d}; returns (dict d -> e, residual)."""
    out = {}
    residual = list(poly)
    for d in candidates:
        phi_d = unipoly.cyclotomic(d)
        while True:
            quo, rem = unipoly.divmod_poly(residual, phi_d)
            if unipoly.is_zero(rem) and not unipoly.is_zero(quo):
                residual = quo
                out[d] = out.get(d, 0) + 1
            else:
                break
        if unipoly.degree(residual) == 0:
            break
    return out, unipoly.monic(residual)


def quasi_unipotence_order(a, hint=None, cap=10000):
    """Smallest N with (A^N - I) nilpotent.

    Accepts an optional divisor hint (the exponent of the deck quotient
    group); a wrong hint is ignored rather than fatal.  Raises
    NotQuasiUnipotent when some eigenvalue is not a root of unity.
    """
    mu = minimal_polynomial(a)
    if unipoly.eval_at(mu, F0) == 0:
        raise SingularOperator("operator is singular")
    deg = unipoly.degree(mu)
    if hint:
        mults, residual = cyclotomic_multiplicities(mu, _divisors(int(hint)))
        if unipoly.degree(residual) == 0:
            return _lcm_all(mults)
    mults, residual = cyclotomic_multiplicities(mu, _candidate_orders(deg, cap))
    if unipoly.degree(residual) != 0:
        raise NotQuasiUnipotent("minimal polynomial has a non-cyclotomic factor")
    return _lcm_all(mults)


def _lcm_all(mults):
    out = 1
    for d in mults:
        g = _gcd(out, d)
        out = out // g * d
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class DeckDecomposition:
    """Operator with its Jordan-Chevalley parts and cyclotomic eigen table."""

    def __init__(self, operator, ss, u, order, eigen_table):
        self.operator = operator
        self.ss = ss
        self.u = u
        self.order = order
        # eigen_table: d -> (rational dim of E_{Phi_d}, complex dim per primitive root)
        self.eigen_table = eigen_table

    def to_obj(self):
        return {
            "order": self.order,
            "eigen_table": {
                str(d): {"dim": dim, "complex_dim_per_root": cdim}
                for d, (dim, cdim) in sorted(self.eigen_table.items())
            },
        }

    def __repr__(self):
        return f"DeckDecomposition(N={self.order}, table={self.eigen_table})"


def decompose(a, hint=None):
    """Full single-operator decomposition with eigen table."""
    ss, u = jordan_chevalley(a)
    order = quasi_unipotence_order(a, hint)
    table = {}
    n = len(a)
    total = 0
    for d in _divisors(order):
        phi_d_mat = poly_of_matrix(unipoly.cyclotomic(d), ss)
        dim = n - linalg.rank(phi_d_mat)
        if dim:
            phi = unipoly.euler_phi(d)
            if dim % phi:
                raise AssertionError("Galois balance violated")
            table[d] = (dim, dim // phi)
            total += dim
    if total != n:
        raise AssertionError("eigenspace dimensions do not fill the space")
    return DeckDecomposition(a, ss, u, order, table)


class EigenBlock:
    """Joint generalized eigenspace for one tuple of cyclotomic factors."""

    def __init__(self, factors, basis):
        self.factors = factors  # tuple of d_i, one per operator
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        return f"EigenBlock(factors={self.factors}, dim={self.dim})"


class EigenDecomposition:
    def __init__(self, operators, orders, blocks, ambient_dim):
        self.operators = operators
        self.orders = orders
        self.blocks = blocks
        self.ambient_dim = ambient_dim

    def per_operator_table(self):
        """For each operator: d -> (dim, complex dim per primitive d-th root)."""
        tables = []
        for i in range(len(self.operators)):
            acc = {}
            for block in self.blocks:
                d = block.factors[i]
                acc[d] = acc.get(d, 0) + block.dim
            table = {}
            for d, dim in acc.items():
                phi = unipoly.euler_phi(d)
                if dim % phi:
                    raise AssertionError("Galois balance violated")
                table[d] = (dim, dim // phi)
            tables.append(table)
        return tables

    def to_obj(self):
        return {
            "ambient_dim": self.ambient_dim,
            "orders": list(self.orders),
            "blocks": [
                {"factors": list(b.factors), "dim": b.dim} for b in self.blocks
            ],
            "per_operator": [
                {str(d): {"dim": dim, "complex_dim_per_root": c} for d, (dim, c) in sorted(t.items())}
                for t in self.per_operator_table()
            ],
        }


def eigenspace_decomposition(operators, hints=None):
    """Joint generalized eigenspaces of a commuting quasi-unipotent family.

    Over Q the blocks are indexed by tuples of cyclotomic factors, one per
    operator; the direct sum of the blocks is the whole space and each block
    is invariant under anything commuting with the family.
    """
    if not operators:
        raise ValueError("need at least one operator")
    n = len(operators[0])
    for a in operators:
        if len(a) != n:
            raise NonCommuting("operators act on different spaces")
    for i in range(len(operators)):
        for j in range(i + 1, len(operators)):
            if not linalg.mat_eq(
                linalg.matmul(operators[i], operators[j]),
                linalg.matmul(operators[j], operators[i]),
            ):
                raise NonCommuting(f"operators {i} and {j} do not commute")
    hints = hints or [None] * len(operators)
    orders = []
    factor_kernels = []
    for a, hint in zip(operators, hints):
        order = quasi_unipotence_order(a, hint)
        orders.append(order)
        mu = minimal_polynomial(a)
        mults, residual = cyclotomic_multiplicities(mu, _divisors(order))
        if unipoly.degree(residual) != 0:
            raise NotQuasiUnipotent("operator has a non-cyclotomic factor")
        kernels = {}
        for d, e in mults.items():
            mat = poly_of_matrix(unipoly.pow_poly(unipoly.cyclotomic(d), e), a)
            kernels[d] = linalg.nullspace(mat)
        factor_kernels.append(kernels)
    blocks = []

    def refine(i, factors, basis):
        if i == len(operators):
            blocks.append(EigenBlock(tuple(factors), basis))
            return
        for d in sorted(factor_kernels[i]):
            inter = linalg.intersect_subspaces(basis, factor_kernels[i][d], n)
            if inter:
                refine(i + 1, factors + [d], inter)

    full = [[F1 if i == k else F0 for i in range(n)] for k in range(n)]
    refine(0, [], full)
    total = sum(b.dim for b in blocks)
    if total != n:
        raise AssertionError("joint eigenspaces do not decompose the space")
    return EigenDecomposition(operators, orders, blocks, n)


def log_on_quotient(gamma, space):
    """Nilpotent log of the deck action of gamma on a homology quotient.

    For gamma in the subgroup H the action is already unipotent and the
    series applies directly; otherwise the series is applied to the
    unipotent part of the Jordan-Chevalley decomposition.
    """
    a = space.deck_action_of(gamma)
    if space.dim == 0:
        return a
    if space.q.subgroup.contains(list(gamma)):
        target = a
    else:
        _, target = jordan_chevalley(a)
    return _log_series(target)


def _log_series(a):
    n = len(a)
    x = linalg.mat_sub(linalg.identity(n), a)
    out = linalg.zeros(n, n)
    term = x
    i = 1
    while not linalg.is_zero_matrix(term):
        if i > n:
            raise NotQuasiUnipotent("log series does not terminate; operator not unipotent")
        out = linalg.mat_sub(out, linalg.mat_scale(term, Fraction(1, i)))
        term = linalg.matmul(term, x)
        i += 1
    return out
