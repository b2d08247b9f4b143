"""Exact rewriting kernel for the coloured quantum plane.

Coefficients live in ``Q[q^e, h, (q-1)^-1]`` with ``e`` affine in colour
symbols; algebra elements are noncommutative polynomials reduced to normal
form by oriented, colour-schematic rule families.
"""

from .algebra import Generator, NcPoly, colour_swap, eval_colourless, gen, nc_mul
from .coeff import CoeffPoly, Exponent, PoleAtOne, UnboundSymbol
from .colours import LAMBDA, MU, NU, Colour, declare
from .parse import ExpressionSyntaxError, UnknownColour, parse_expr, render
from .rewrite import NoRuleForPair, RewriteSystem, load_families, normalize, overlap_report, reduces_to_zero

__version__ = "0.1.0"

__all__ = [
    "CoeffPoly", "Colour", "Exponent", "ExpressionSyntaxError", "Generator", "LAMBDA", "MU", "NU",
    "NcPoly", "NoRuleForPair", "PoleAtOne", "RewriteSystem", "UnboundSymbol", "UnknownColour",
    "colour_swap", "declare", "eval_colourless", "gen", "load_families", "nc_mul", "normalize",
    "overlap_report", "parse_expr", "reduces_to_zero", "render",
]
