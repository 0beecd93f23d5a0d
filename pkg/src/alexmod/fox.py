"""Fox free differential calculus and presentation chain complexes.

A presentation of pi_1(U) together with the induced map phi to the deck
group Z^g determines the chain complex of the abelian cover in degrees
0..2: d1 lists phi(x)-1 over the generators, d2 is the Fox Jacobian of the
relators pushed through phi.  Only H_0 and H_1 of the cover are claimed
from a presentation; H_2 requires a full complex supplied through `chain`.

Words are sequences of nonzero signed 1-based generator indices, e.g. the
trefoil relator a b a b^-1 a^-1 b^-1 is [1, 2, 1, -2, -1, -2].
"""

import json

from . import zmat
from .chain import FreeChainComplex
from .errors import IncompatiblePhi, NonSurjectivePhi, UnknownBuiltin, UnknownGenerator
from .laurent import LaurentPoly


class Presentation:
    """Group presentation with a surjection phi: generators -> Z^g."""

    __slots__ = ("generators", "relators", "phi", "nvars")

    def __init__(self, generators, relators, phi):
        self.generators = list(generators)
        self.relators = [list(map(int, w)) for w in relators]
        self.phi = [tuple(map(int, v)) for v in phi]
        if len(self.phi) != len(self.generators):
            raise IncompatiblePhi("phi must assign one exponent vector per generator")
        if not self.phi:
            raise IncompatiblePhi("a presentation needs at least one generator")
        self.nvars = len(self.phi[0])
        if any(len(v) != self.nvars for v in self.phi):
            raise IncompatiblePhi("phi exponent vectors have mixed arity")
        ngen = len(self.generators)
        for w in self.relators:
            for letter in w:
                if letter == 0 or abs(letter) > ngen:
                    raise UnknownGenerator(f"letter {letter} out of range")
            img = self.word_image(w)
            if any(x != 0 for x in img):
                raise IncompatiblePhi(f"relator {w} maps to {img} != 0 under phi")
        cols = [[v[i] for v in self.phi] for i in range(self.nvars)]
        # columns of the g x n matrix are the phi images
        mat = [[self.phi[jj][i] for jj in range(ngen)] for i in range(self.nvars)]
        if not zmat.spans_zg(mat, self.nvars):
            raise NonSurjectivePhi("phi is not surjective onto Z^g; the cover would be disconnected")

    def word_image(self, word):
        """Image of a word in Z^g under phi."""
        out = [0] * self.nvars
        for letter in word:
            v = self.phi[abs(letter) - 1]
            if letter > 0:
                out = [a + b for a, b in zip(out, v)]
            else:
                out = [a - b for a, b in zip(out, v)]
        return tuple(out)

    def to_obj(self):
        return {
            "generators": list(self.generators),
            "relators": [list(w) for w in self.relators],
            "phi": [list(v) for v in self.phi],
        }

    @classmethod
    def from_obj(cls, obj):
        return cls(obj["generators"], obj["relators"], obj["phi"])

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_obj(json.load(fh))

    def __repr__(self):
        return f"Presentation({self.generators}, relators={len(self.relators)}, g={self.nvars})"


def fox_derivative(pres: Presentation, word, gen) -> LaurentPoly:
    """The Fox derivative d(word)/d(gen), pushed through phi into R.

    gen is a 1-based generator index or a generator name.  Satisfies the
    product rule d(uv) = d(u) + phi(u) d(v), with d(x)/dx = 1 and
    d(x^-1)/dx = -phi(x)^-1.
    """
    if isinstance(gen, str):
        try:
            target = pres.generators.index(gen) + 1
        except ValueError as exc:
            raise UnknownGenerator(f"unknown generator {gen!r}") from exc
    else:
        target = int(gen)
        if not 1 <= target <= len(pres.generators):
            raise UnknownGenerator(f"generator index {gen} out of range")
    g = pres.nvars
    out = LaurentPoly.zero(g)
    prefix = [0] * g
    for letter in word:
        idx = abs(letter)
        v = pres.phi[idx - 1]
        if letter > 0:
            if idx == target:
                out = out + LaurentPoly.monomial(tuple(prefix))
            prefix = [a + b for a, b in zip(prefix, v)]
        else:
            prefix = [a - b for a, b in zip(prefix, v)]
            if idx == target:
                out = out - LaurentPoly.monomial(tuple(prefix))
    return out


def presentation_complex(pres: Presentation) -> FreeChainComplex:
    """Chain complex R^{#relators} -> R^{#generators} -> R of the cover.

    d1 has the column phi(x)-1 for each generator; d2 is the Fox Jacobian.
    The fundamental Fox identity makes d1 d2 = 0, which the complex
    constructor verifies exactly.
    """
    g = pres.nvars
    n = len(pres.generators)
    r = len(pres.relators)
    d1 = [[LaurentPoly.monomial(pres.phi[i]) - 1 for i in range(n)]]
    ranks = {0: 1, 1: n}
    diffs = {1: d1}
    if r:
        d2 = [[fox_derivative(pres, w, i + 1) for w in pres.relators] for i in range(n)]
        ranks[2] = r
        diffs[2] = d2
    return FreeChainComplex(g, ranks, diffs)


def _commutator(i, j):
    return [i, j, -i, -j]


def builtin(name, param=None):
    """Built-in presentations: trefoil, pencil(d), generic_arrangement(m).

    All meridian generators map to t (g = 1) by default; generic_arrangement
    accepts multivariable=True through param=(m, True) to send the i-th
    meridian to t_i instead.
    """
    if name == "trefoil":
        return Presentation(["a", "b"], [[1, 2, 1, -2, -1, -2]], [[1], [1]])
    if name == "pencil":
        d = int(param)
        if d < 2:
            raise UnknownBuiltin("pencil needs d >= 2 lines")
        gens = [f"x{i+1}" for i in range(d)]
        delta = list(range(1, d + 1))
        inv_delta = [-i for i in reversed(delta)]
        relators = [[i] + delta + [-i] + inv_delta for i in range(1, d)]
        return Presentation(gens, relators, [[1]] * d)
    if name == "generic_arrangement":
        multivariable = False
        m = param
        if isinstance(param, tuple):
            m, multivariable = param
        m = int(m)
        if m < 1:
            raise UnknownBuiltin("generic_arrangement needs m >= 1 lines")
        gens = [f"x{i+1}" for i in range(m)]
        relators = [_commutator(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
        if multivariable:
            phi = [[1 if k == i else 0 for k in range(m)] for i in range(m)]
        else:
            phi = [[1]] * m
        return Presentation(gens, relators, phi)
    raise UnknownBuiltin(f"unknown builtin presentation {name!r}")
