"""Exact computational algebra for the involutivity of characteristic varieties.

Submodules: ``polyarith`` (polynomials), ``idealkit`` (Groebner bases,
radicals), ``weylalg`` (Weyl algebra, characteristic ideals),
``poissoncalc`` (brackets, forms, criteria), ``hochhom`` (Koszul/HKR,
tautological class, Chern multiplicities), ``pipeline`` and ``cli``.
"""

from .errors import HHGabberError, ParseError, UnsupportedError
from .idealkit import Ideal, RadicalStrategy, groebner_basis, radical
from .pipeline import GabberReport, report_render, run_gabber_check
from .poissoncalc import Bivector, bracket_eval, canonical_symplectic, is_involutive
from .polyarith import GREVLEX, LEX, MonomialOrder, Polynomial, PolyRing, cotangent_ring
from .stanza import parse_input
from .weylalg import DModulePresentation, WeylOperator, characteristic_ideal, parse_operator

__version__ = "0.1.0"

__all__ = [
    "Bivector",
    "DModulePresentation",
    "GREVLEX",
    "GabberReport",
    "HHGabberError",
    "Ideal",
    "LEX",
    "MonomialOrder",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "RadicalStrategy",
    "UnsupportedError",
    "WeylOperator",
    "bracket_eval",
    "canonical_symplectic",
    "characteristic_ideal",
    "cotangent_ring",
    "groebner_basis",
    "is_involutive",
    "parse_input",
    "parse_operator",
    "radical",
    "report_render",
    "run_gabber_check",
]
