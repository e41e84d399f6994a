"""Cluster variables of types A, B and C from polygon models."""

from .laurent import LaurentPoly, canonical_text, parse
from .polygon import PolygonError, ThetaTriangulation, Triangulation, b_matrix, parse_triangulation
from .seeds import MutationError, theta_oracle, type_a_oracle
from .snake import SnakeError, SnakeGraph, expansion
from .symrep import RepresentationError, cc_map, symmetric_of_orbit, symmetric_quiver
from .typebc import ExpansionError, expand, expand_type_b, expand_type_c

__all__ = [
    "ExpansionError",
    "LaurentPoly",
    "MutationError",
    "PolygonError",
    "RepresentationError",
    "SnakeError",
    "SnakeGraph",
    "ThetaTriangulation",
    "Triangulation",
    "b_matrix",
    "canonical_text",
    "cc_map",
    "expand",
    "expand_type_b",
    "expand_type_c",
    "expansion",
    "parse",
    "parse_triangulation",
    "symmetric_of_orbit",
    "symmetric_quiver",
    "theta_oracle",
    "type_a_oracle",
]
__version__ = "0.1.0"
