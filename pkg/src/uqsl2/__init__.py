"""Exact computation in the quantum group U_q(sl2) over Q(q) and its weight modules."""

from .algebra import (E, F, T, AlgebraElement, PbwMonomial, casimir, multiply, render_element,
                      sigma)
from .parser import ParseError, parse_element, parse_scalar
from .scalars import Q, RatScalar, qbinom, qfact, qint, render_scalar

__version__ = "0.1.0"

__all__ = ["AlgebraElement", "E", "F", "ParseError", "PbwMonomial", "Q", "RatScalar", "T",
           "casimir", "multiply", "parse_element", "parse_scalar", "qbinom", "qfact", "qint",
           "render_element", "render_scalar", "sigma"]
