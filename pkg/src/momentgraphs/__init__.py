"""Moment graphs for affine Weyl groups of types A1 and A2: Bruhat, parabolic,
periodic and stable graphs, Kazhdan-Lusztig polynomials, canonical sheaves and
the checks relating them."""
from __future__ import annotations

from .fields import QQ, CoefficientField, FieldError
from .graphs import (
    GraphError,
    IntervalSpec,
    MomentGraph,
    NotFound,
    alcove_of_lattice_point,
    bruhat_graph,
    classify_edges,
    find_m0,
    is_gkm,
    parabolic_graph_alcoves,
    periodic_graph,
    stable_graph,
)
from .polys import QPoly, generic_poly, kl_alcoves, kl_parabolic, kl_regular
from .weyl import AffineWeylGroup, AffWeylElt, affine_weyl_group

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "CoefficientField",
    "FieldError",
    "GraphError",
    "IntervalSpec",
    "MomentGraph",
    "NotFound",
    "alcove_of_lattice_point",
    "bruhat_graph",
    "classify_edges",
    "find_m0",
    "is_gkm",
    "parabolic_graph_alcoves",
    "periodic_graph",
    "stable_graph",
    "QPoly",
    "generic_poly",
    "kl_alcoves",
    "kl_parabolic",
    "kl_regular",
    "AffineWeylGroup",
    "AffWeylElt",
    "affine_weyl_group",
]
