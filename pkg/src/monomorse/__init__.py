"""Algebraic discrete Morse theory on Taylor resolutions of monomial ideals."""

from .linalg import Field, QQ
from .monomial import (GenSubset, MonomialIdeal, component_classes,
                       minimalize_generators, polarize)
from .morse import (BasedComplex, Cell, Matching, complex_homology, morse_complex,
                    validate_matching)
from .taylor import (build_taylor, gcd_matching, nbc_matching, nbc_sets,
                     standard_matching)

__version__ = "0.1.0"

__all__ = [
    "Field", "QQ", "GenSubset", "MonomialIdeal", "component_classes",
    "minimalize_generators", "polarize", "BasedComplex", "Cell", "Matching",
    "complex_homology", "morse_complex", "validate_matching", "build_taylor",
    "gcd_matching", "nbc_matching", "nbc_sets", "standard_matching",
]
