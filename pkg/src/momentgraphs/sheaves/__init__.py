"""Sheaves on moment graphs: graded polynomial modules, canonical sheaves and functors."""
from __future__ import annotations

from .bmp import bmp_construct, check_bmp, rank_table
from .functors import adjunction_check, pullback, pushforward, stab_composite, stab_functor
from .ring import PolyRing
from .sheaf import Sheaf, TruncationRisk, is_flabby, is_flabby_local, structure_sheaf

__all__ = [
    "bmp_construct",
    "check_bmp",
    "rank_table",
    "adjunction_check",
    "pullback",
    "pushforward",
    "stab_composite",
    "stab_functor",
    "PolyRing",
    "Sheaf",
    "TruncationRisk",
    "is_flabby",
    "is_flabby_local",
    "structure_sheaf",
]
