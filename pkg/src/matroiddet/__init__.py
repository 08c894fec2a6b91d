"""Principal matroid determinants of rational linear spaces.

Exact computations of matroid invariants, discriminant degrees, tropical
weights, Newton polytopes and the matroid hypergeometric system.
"""

from .errors import *  # noqa: F401,F403
from .exact import RationalMatrix, IntegerMatrix, parse_rational, rank, kernel_basis
from .matroid import Matroid, Circuit, FlatLattice
from .poly import SparsePoly, circuit_polynomial, reciprocal_ideal_generators

__version__ = "0.1.0"
