"""Exact-arithmetic engine for the grammar calculus of Eulerian-type polynomials.

Three independent routes to the same polynomials -- grammar iteration,
recurrence tables, and exhaustive enumeration of permutations, k-Stirling
words, and increasing trees -- plus the basis expansions and generating
functions tying them together.  Everything is exact rational arithmetic.
"""

from .exactalg import Poly, elementary_symmetric
from .grammar import Grammar, catalog, transform_check
from .series import Series, egf_build

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "Series",
    "Grammar",
    "catalog",
    "egf_build",
    "elementary_symmetric",
    "transform_check",
    "__version__",
]
