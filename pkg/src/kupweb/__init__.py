"""Graph-valued bracket invariants of virtual, flat and free knots."""

from .diagram import ChordDiagram, GaussCodeError, NotFound, odd_writhe, parse_gauss
from .poly import GraphPolynomial, LaurentPoly
from .web import Web

__all__ = [
    "ChordDiagram",
    "GaussCodeError",
    "GraphPolynomial",
    "LaurentPoly",
    "NotFound",
    "Web",
    "odd_writhe",
    "parse_gauss",
]
