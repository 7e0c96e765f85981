from .fields import GF, GFq, FieldElem, FiniteField
from .poly import Poly, resultant, irreducibles, is_irreducible, factor
from .localfield import RatFunc, Place, sres, res_at_place
from .cyclo import CycloRing, CycloValue, CharacterTable

__all__ = [
    "GF", "GFq", "FieldElem", "FiniteField",
    "Poly", "resultant", "irreducibles", "is_irreducible", "factor",
    "RatFunc", "Place", "sres", "res_at_place",
    "CycloRing", "CycloValue", "CharacterTable",
]
