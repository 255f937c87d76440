"""Exact computations in U_q^+(so5), its simple quotients and the quantum GWA."""
from .bquot import Params, basis_monomials, from_gwa, gwa_bridge, make_b, make_r, to_gwa
from .coeffq import RatQ, canonicalize
from .deriv import DerivSpec, b_derivation_check, extend_to_r, hh1_bounded, innerize, solve_derivation_space
from .exprio import element_from_json, element_to_json, parse_element, parse_ratq, print_canonical
from .gwa import GwaAlgebra, gwa_decompose, so5_gwa
from .pbw import Elem, Presentation, derive_inverse_rules, rewrite_word
from .so5 import CONSTANTS, chi, make_so5
from .verify import run_verify

__all__ = [
    "CONSTANTS", "DerivSpec", "Elem", "GwaAlgebra", "Params", "Presentation", "RatQ",
    "b_derivation_check", "basis_monomials", "canonicalize", "chi", "derive_inverse_rules",
    "element_from_json", "element_to_json", "extend_to_r", "from_gwa", "gwa_bridge",
    "gwa_decompose", "hh1_bounded", "innerize", "make_b", "make_r", "make_so5",
    "parse_element", "parse_ratq", "print_canonical", "rewrite_word", "run_verify",
    "so5_gwa", "solve_derivation_space", "to_gwa",
]
