"""Exact symbolic computation with differential operators on the supercircle S^{1|n}."""
from .coeffs import DELTA, I, LAM, MU, GaussianCoeff, ParamPoly, RationalCoeff, parse_coeff
from .superfunction import FOURIER, POLY, SuperFunction
from .contact import ContactField, Density, contact_bracket, lie_density, osp_basis
from .diffop import DiffOperator, action_closed, compose, conjugate, module_action
from .symbols import SymbolVector, beta_extract, quantize, symbolize
from .normal import build_xi, chi_extract, deformed_action, normal_symbolize
from .cocycles import Upsilon, cocycle_check
from .classification import solve, solve_generic, solve_resonant, table1
from .kn import ContactFieldN, DiffOperatorN, berezin, pairing, star

__all__ = [
    "DELTA", "I", "LAM", "MU", "GaussianCoeff", "ParamPoly", "RationalCoeff", "parse_coeff",
    "FOURIER", "POLY", "SuperFunction",
    "ContactField", "Density", "contact_bracket", "lie_density", "osp_basis",
    "DiffOperator", "action_closed", "compose", "conjugate", "module_action",
    "SymbolVector", "beta_extract", "quantize", "symbolize",
    "build_xi", "chi_extract", "deformed_action", "normal_symbolize",
    "Upsilon", "cocycle_check",
    "solve", "solve_generic", "solve_resonant", "table1",
    "ContactFieldN", "DiffOperatorN", "berezin", "pairing", "star",
]

__version__ = "0.1.0"
