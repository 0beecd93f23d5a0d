"""alexmod: exact invariants of abelian covers.

Truncated quotients of homology Alexander modules by powers of augmentation
ideals, deck-transformation eigenspace decompositions, and the dimension
bookkeeping for Milnor fibers of line arrangements.  All arithmetic is exact
over the rationals.
"""

from .linalg import backend

__version__ = "0.1.0"

__all__ = ["backend", "__version__"]
