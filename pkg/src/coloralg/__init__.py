"""Exact construction and verification of derivation-simple color algebras.

The package builds the algebras A(k, G, E, f) graded by a finite abelian
group with a skew-symmetric bicharacter, their canonical derivation spaces,
and the Witt and Weyl type Lie color algebras, all over an exact cyclotomic
field.
"""

from .scalars import CyclotomicField, Scalar
from .grading import Bicharacter, GradingGroup, SignClass
from .structure import GammaZero, GroupG, KSignature, StructureData
from .algebra import AlgebraElement, BasisIndex, ColorAlgebra, Truncation
from .derivations import DerivationSpec, Kind
from .weyl import WeylAlgebra, WeylElement

__all__ = [
    "AlgebraElement",
    "BasisIndex",
    "Bicharacter",
    "ColorAlgebra",
    "CyclotomicField",
    "DerivationSpec",
    "GammaZero",
    "GradingGroup",
    "GroupG",
    "KSignature",
    "Kind",
    "Scalar",
    "SignClass",
    "StructureData",
    "Truncation",
    "WeylAlgebra",
    "WeylElement",
]
