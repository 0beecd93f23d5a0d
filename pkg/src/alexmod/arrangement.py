"""Line arrangements in C^2 and the Milnor fiber dimension pipeline.

Explicit lines carry Gaussian rational coefficients; arrangements whose
realization needs other algebraic numbers enter through abstract incidence
data, since everything downstream consumes only the combinatorics: the
cyclic order N, Euler characteristic, the free rank and quotient dimension
of H_2 of the infinite cyclic cover, the Milnor fiber first Betti number,
the covering-space dimension identities, and the spectrum consistency
arithmetic.  Spectrum values are user input, never computed here.
"""

import json
from fractions import Fraction

from . import unipoly
from .chain import homology_of_quotient, torsion_free_split
from .errors import (DegenerateLines, GridMismatch, NotEssential, SequenceMismatch,
                     TooFewLines, UnexpectedFreePart, ValidationError)
from .fox import Presentation, presentation_complex
from .laurent import SubgroupSpec, quotient_algebra, to_unipoly
from .zmat import lcm_int

F0 = Fraction(0)
F1 = Fraction(1)


class QI:
    """Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _qi(other)
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = _qi(other)
        return QI(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        other = _qi(other)
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    def __truediv__(self, other):
        other = _qi(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * other.re + self.im * other.im) / n,
                  (self.im * other.re - self.re * other.im) / n)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __eq__(self, other):
        other = _qi(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


def _qi(x):
    return x if isinstance(x, QI) else QI(x)


class LineArrangement:
    """An essential arrangement of m distinct lines in C^2.

    Either explicit: lines a x + b y + c = 0 with Gaussian rational
    coefficients, pairwise non-proportional; or abstract: the number of
    lines and the list of multiple points with their incident lines.
    """

    def __init__(self, lines=None, incidence=None):
        if (lines is None) == (incidence is None):
            raise ValidationError("give either explicit lines or incidence data")
        if lines is not None:
            self.lines = [tuple(_qi(c) for c in ln) for ln in lines]
            self.m = len(self.lines)
            self._check_lines()
            self.points = self._compute_points()
        else:
            m, pts = incidence
            self.lines = None
            self.m = int(m)
            self.points = []
            seen = set()
            for mult, members in pts:
                members = tuple(sorted(int(i) for i in members))
                if len(members) != len(set(members)):
                    raise ValidationError("repeated line index at a point")
                if int(mult) != len(members):
                    raise ValidationError("multiplicity does not match the member count")
                if mult < 2:
                    raise ValidationError("multiple points have multiplicity >= 2")
                if any(i < 0 or i >= self.m for i in members):
                    raise ValidationError("line index out of range")
                if members in seen:
                    raise ValidationError("duplicate point")
                seen.add(members)
                self.points.append((int(mult), members))
            for p1 in range(len(self.points)):
                for p2 in range(p1 + 1, len(self.points)):
                    common = set(self.points[p1][1]) & set(self.points[p2][1])
                    if len(common) > 1:
                        raise ValidationError("two points share two lines")
            self.points.sort(key=lambda t: t[1])
        if not self.points:
            raise NotEssential("no intersection point: the arrangement has rank < 2")

    def _check_lines(self):
        for i in range(self.m):
            a1, b1, _ = self.lines[i]
            if a1.is_zero() and b1.is_zero():
                raise DegenerateLines(f"line {i} has zero linear part")
            for j in range(i + 1, self.m):
                a2, b2, c2 = self.lines[j]
                c1 = self.lines[i][2]
                # proportional iff all 2x2 minors of the coefficient rows vanish
                if (a1 * b2 - a2 * b1).is_zero() and (a1 * c2 - a2 * c1).is_zero() \
                        and (b1 * c2 - b2 * c1).is_zero():
                    raise DegenerateLines(f"lines {i} and {j} are proportional")

    def _compute_points(self):
        locus = {}
        for i in range(self.m):
            a1, b1, c1 = self.lines[i]
            for j in range(i + 1, self.m):
                a2, b2, c2 = self.lines[j]
                det = a1 * b2 - a2 * b1
                if det.is_zero():
                    continue  # parallel pair, no affine point
                x = (b1 * c2 - b2 * c1) / det
                y = (a2 * c1 - a1 * c2) / det
                locus.setdefault((x, y), set()).update((i, j))
        pts = []
        for (x, y), members in locus.items():
            members = tuple(sorted(members))
            pts.append((len(members), members))
        pts.sort(key=lambda t: t[1])
        return pts

    def combinatorics(self):
        """(m, multiple points as (multiplicity, member lines), essential flag)."""
        return self.m, list(self.points), True

    def moebius_poincare(self):
        """Poincare polynomial coefficients [b0, b1, b2] from the Moebius function.

        Generic recursion mu(x) = -sum_{y < x} mu(y) over the intersection
        poset (whole space, lines, multiple points).
        """
        mu_hat = 1
        mu_lines = {}
        for i in range(self.m):
            mu_lines[i] = -mu_hat
        mu_points = []
        for mult, members in self.points:
            below = mu_hat + sum(mu_lines[i] for i in members)
            mu_points.append(-below)
        b0 = abs(mu_hat)
        b1 = sum(abs(v) for v in mu_lines.values())
        b2 = sum(abs(v) for v in mu_points)
        return [b0, b1, b2]

    def betti_chi(self):
        """(b1, b2, chi(U)) of the complement, cross-checked two ways."""
        b2_direct = sum(mult - 1 for mult, _ in self.points)
        b0, b1, b2 = self.moebius_poincare()
        if b1 != self.m or b2 != b2_direct:
            raise AssertionError("Moebius oracle disagrees with the incidence count")
        chi = 1 - self.m + b2_direct
        return self.m, b2_direct, chi

    def milnor_n(self):
        """The combinatorial cyclic order N: smallest multiple of
        lcm(multiplicities > 2) strictly above the line count."""
        if self.m < 3:
            raise TooFewLines("the Milnor pipeline needs m >= 3 lines")
        n0 = 1
        for mult, _ in self.points:
            if mult > 2:
                n0 = lcm_int(n0, mult)
        k = self.m // n0 + 1
        return n0 * k

    def h2_report(self):
        """(free rank of H_2 of the cover, dim of its (t^N - 1) quotient).

        Reported by the combinatorial rule: the rank equals chi(U) and the
        quotient dimension N * chi(U); H_2 itself is never recomputed here.
        """
        n = self.milnor_n()
        _, _, chi = self.betti_chi()
        return chi, n * chi

    def to_obj(self):
        if self.lines is not None:
            return {
                "lines": [
                    [[c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]
                     for c in ln]
                    for ln in self.lines
                ]
            }
        return {
            "incidence": {
                "m": self.m,
                "points": [{"mult": mult, "lines": list(mem)} for mult, mem in self.points],
            }
        }

    @classmethod
    def from_obj(cls, obj):
        if "lines" in obj:
            lines = []
            for ln in obj["lines"]:
                coeffs = []
                for c in ln:
                    if isinstance(c, (int, float)):
                        coeffs.append(QI(Fraction(c)))
                    elif len(c) == 2:
                        coeffs.append(QI(Fraction(c[0], c[1])))
                    else:
                        coeffs.append(QI(Fraction(c[0], c[1]), Fraction(c[2], c[3])))
                lines.append(coeffs)
            return cls(lines=lines)
        if "incidence" in obj:
            inc = obj["incidence"]
            pts = [(p["mult"], p["lines"]) for p in inc["points"]]
            return cls(incidence=(inc["m"], pts))
        raise ValidationError("arrangement object needs 'lines' or 'incidence'")

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_obj(json.load(fh))

    def __repr__(self):
        return f"LineArrangement(m={self.m}, points={self.points})"


def triangle():
    """Three generic lines: x = 0, y = 0, x + y = 1."""
    return LineArrangement(lines=[(1, 0, 0), (0, 1, 0), (1, 1, -1)])


def pencil_arrangement(d):
    """d concurrent lines through the origin: x = k y for k = 0..d-2, and y = 0."""
    lines = [(1, -k, 0) for k in range(d - 1)] + [(0, 1, 0)]
    return LineArrangement(lines=lines)


def generic_arrangement_lines(m):
    """m lines in general position (no two parallel, no triple points)."""
    # tangent lines to a parabola: y = 2 k x - k^2 at parameters k = 1..m
    lines = [(2 * k, -1, -k * k) for k in range(1, m + 1)]
    arr = LineArrangement(lines=lines)
    if any(mult != 2 for mult, _ in arr.points):
        raise AssertionError("parabola tangents failed to be generic")
    return arr


# ---------------------------------------------------------------------------
# Milnor fiber pipeline


def _check_meridian_presentation(arr, pres: Presentation):
    if pres.nvars != 1:
        raise ValidationError("the Milnor pipeline needs phi onto Z (all meridians to t)")
    if any(v != (1,) for v in pres.phi):
        raise ValidationError("every generator must be a meridian mapping to t")


def milnor_fiber_b1(arr: LineArrangement, pres: Presentation):
    """First Betti number of the Milnor fiber of the cone over the arrangement.

    Equals dim H_1(U^f): the torsion dimension of the Alexander invariant of
    the plane section, whose free rank must vanish (a nonzero free part
    flags a presentation that does not match an essential arrangement).
    """
    _check_meridian_presentation(arr, pres)
    arr.milnor_n()  # enforces m >= 3 and essentiality
    complex_ = presentation_complex(pres)
    rank, divisors = torsion_free_split(complex_, 1)
    if rank != 0:
        raise UnexpectedFreePart(f"H_1 has free rank {rank}; wrong presentation?")
    return sum(unipoly.degree(to_unipoly(p)[0]) for p in divisors)


def torsion_eigenvalue_dims(divisors, n):
    """Complex dimensions of Tors H_1 per eigenvalue, from elementary divisors.

    Returns a dict l -> dim for eigenvalues e^{2 pi i l / N}, l = 1..N; the
    divisors must be products of cyclotomics Phi_d with d | N.
    """
    from .deck import cyclotomic_multiplicities, _divisors

    out = {}
    for p in divisors:
        poly, _ = to_unipoly(p)
        mults, residual = cyclotomic_multiplicities(poly, _divisors(n))
        if unipoly.degree(residual) != 0:
            raise SequenceMismatch(f"divisor {p} is not annihilated by t^{n} - 1")
        for d, e in mults.items():
            for l in _primitive_residues(d, n):
                out[l] = out.get(l, 0) + e
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _primitive_residues(d, n):
    """l in 1..n with e^{2 pi i l / n} a primitive d-th root of unity."""
    assert n % d == 0
    step = n // d
    return [l for l in range(1, n + 1) if l % step == 0 and _gcd(l // step, d) == 1]


class MilnorReport:
    """Assembled output of the arrangement pipeline."""

    def __init__(self, m, chi, n, h2_rank, h2_quotient_dim, b1_fiber=None,
                 torsion_per_eigenvalue=None, h1_un=None, h2_un=None, spectrum=None):
        self.m = m
        self.chi = chi
        self.n = n
        self.h2_rank = h2_rank
        self.h2_quotient_dim = h2_quotient_dim
        self.b1_fiber = b1_fiber
        self.torsion_per_eigenvalue = torsion_per_eigenvalue
        self.h1_un = h1_un
        self.h2_un = h2_un
        self.spectrum = spectrum

    def to_obj(self):
        out = {
            "schema": 1,
            "m": self.m,
            "chi": self.chi,
            "N": self.n,
            "h2_free_rank": self.h2_rank,
            "h2_quotient_dim": self.h2_quotient_dim,
        }
        if self.b1_fiber is not None:
            out["milnor_fiber_b1"] = self.b1_fiber
            out["torsion_per_eigenvalue"] = {
                str(l): d for l, d in sorted((self.torsion_per_eigenvalue or {}).items())
            }
            out["dim_h1_cyclic_cover"] = self.h1_un
            out["dim_h2_cyclic_cover_predicted"] = self.h2_un
        if self.spectrum is not None:
            out["spectrum_check"] = self.spectrum.to_obj()
        return out


def milnor_sequence_dims(arr: LineArrangement, pres: Presentation):
    """(dim H_1(U_N), predicted dim H_2(U_N)) from the covering space identities.

    dim H_1(U_N) = dim Tors H_1(U^f) + 1 and the predicted
    dim H_2(U_N) = N chi(U) + dim Tors H_1(U^f); the first value is also
    computed directly from the chain complex with coefficients in
    R/(t^N - 1) and the two answers are required to agree.
    """
    _check_meridian_presentation(arr, pres)
    n = arr.milnor_n()
    _, _, chi = arr.betti_chi()
    tors = milnor_fiber_b1(arr, pres)
    h1_predicted = tors + 1
    complex_ = presentation_complex(pres)
    q = quotient_algebra(SubgroupSpec.cyclic(n), 1)
    h1_direct = homology_of_quotient(complex_, q, 1).dim
    if h1_direct != h1_predicted:
        raise SequenceMismatch(
            f"H_1(U_N) mismatch: exact sequence gives {h1_predicted}, direct computation {h1_direct}")
    return h1_predicted, n * chi + tors


def milnor_report(arr: LineArrangement, pres=None, spectrum_n=None, tors=None):
    """Full MilnorReport; the homology side needs a presentation."""
    m, _, chi = arr.betti_chi()
    n = arr.milnor_n()
    rank, qdim = arr.h2_report()
    report = MilnorReport(m, chi, n, rank, qdim)
    if pres is not None:
        report.b1_fiber = milnor_fiber_b1(arr, pres)
        complex_ = presentation_complex(pres)
        _, divisors = torsion_free_split(complex_, 1)
        report.torsion_per_eigenvalue = torsion_eigenvalue_dims(divisors, n)
        report.h1_un, report.h2_un = milnor_sequence_dims(arr, pres)
        if spectrum_n is not None:
            report.spectrum = spectrum_check(arr, spectrum_n, report.torsion_per_eigenvalue)
    elif spectrum_n is not None:
        if tors is None:
            raise ValidationError("spectrum check without a presentation needs torsion dims")
        report.spectrum = spectrum_check(arr, spectrum_n, tors)
    return report


# ---------------------------------------------------------------------------
# spectrum consistency arithmetic


class SpectrumReport:
    def __init__(self, gr0, grm1, grm2, f0, fm1, flags):
        self.gr0 = gr0
        self.grm1 = grm1
        self.grm2 = grm2
        self.f0 = f0
        self.fm1 = fm1
        self.flags = flags

    def to_obj(self):
        def _num(x):
            return x.numerator if isinstance(x, Fraction) and x.denominator == 1 else [x.numerator, x.denominator]

        return {
            "dim_gr_F_0": _num(self.gr0),
            "dim_gr_F_-1": _num(self.grm1),
            "dim_gr_F_-2": _num(self.grm2),
            "dim_F_0": _num(self.f0),
            "dim_F_-1": _num(self.fm1),
            "flags": {name: {"holds": ok, "identity": ident} for name, (ok, ident) in self.flags.items()},
        }

    def all_hold(self):
        return all(ok for ok, _ in self.flags.values())

    def __repr__(self):
        return f"SpectrumReport(gr=({self.gr0},{self.grm1},{self.grm2}), flags={{{', '.join(f'{k}: {v[0]}' for k, v in self.flags.items())}}})"


def spectrum_check(arr: LineArrangement, n_values, tors):
    """Evaluate the Hodge-graded dimension formulas on user-supplied spectrum data."""
    m, _, chi = arr.betti_chi()
    n = arr.milnor_n()
    return spectrum_identities(n, chi, m, n_values, tors)


def spectrum_identities(n, chi, m, n_values, tors):
    """The proof-level formulas, from raw combinatorial numbers.

    n_values maps alpha in (0, 3] with denominator dividing N to integers
    (the spectrum multiplicities of the associated cone polynomial); tors
    maps l in 1..N to the torsion dimension at eigenvalue e^{2 pi i l / N}.
    Emits the three graded dimensions of the H_2 quotient, the two filtered
    dimensions, and the named consistency flags.
    """
    sums = [F0, F0, F0]  # windows (0,1], (1,2], (2,3]
    for alpha, value in n_values.items():
        alpha = Fraction(alpha)
        if alpha <= 0 or alpha > 3:
            raise GridMismatch(f"spectrum exponent {alpha} outside (0, 3]")
        if n % alpha.denominator != 0:
            raise GridMismatch(f"spectrum exponent {alpha} has denominator not dividing N={n}")
        window = 0 if alpha <= 1 else (1 if alpha <= 2 else 2)
        sums[window] += Fraction(value)
    tors = {int(l): int(v) for l, v in tors.items()}
    if any(l < 1 or l > n for l in tors):
        raise GridMismatch("torsion eigenvalue labels must be l in 1..N")
    total_tors = sum(tors.values())
    tors_at_one = tors.get(n, 0)
    off_one = total_tors - tors_at_one

    half_excess = Fraction(total_tors - (m - 1), 2)
    grm1 = sums[1] + m
    gr0 = sums[2] - half_excess
    grm2 = sums[0] - (m - 1) - half_excess
    f0 = gr0
    fm1 = f0 + grm1

    flags = {
        "graded_sum": (
            gr0 + grm1 + grm2 == n * chi,
            "Gr_F^0 + Gr_F^-1 + Gr_F^-2 = N*chi(U)",
        ),
        "eigenvalue_one_torsion": (
            tors_at_one == m - 1,
            "dim Tors H_1 at eigenvalue 1 = m - 1",
        ),
        "off_one_evenness": (
            off_one >= 0 and off_one % 2 == 0,
            "off-1 torsion dimension is non-negative and even",
        ),
    }
    return SpectrumReport(gr0, grm1, grm2, f0, fm1, flags)
