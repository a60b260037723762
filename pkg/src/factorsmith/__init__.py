"""factorsmith: exact non-unique-factorization invariants.

Computes sets of lengths, distance sets, elasticities, (monotone)
catenary degrees and the daleth invariant over four concrete monoid
families: numerical monoids, zero-sum monoids over finite abelian
groups, monoids of ideals of orders in quadratic number fields, and
multiplicative/ideal monoids of truncated power-series subrings over
finite fields.
"""

from . import core, fprimary, gf, numonoid, quadorder, suites, zerosum

__version__ = "0.1.0"

__all__ = [
    "core",
    "fprimary",
    "gf",
    "numonoid",
    "quadorder",
    "suites",
    "zerosum",
]
