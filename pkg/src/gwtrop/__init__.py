"""Quadratically enriched intersection counts of tropical hypersurfaces.

The combinatorial multiplicity formula lives in :mod:`gwtrop.enriched`; the
independent trace-form check lives in :mod:`gwtrop.oracle`.
"""
from .enriched import enriched_multiplicity, total_enriched_count
from .fields import QQ, RR, FieldSpec, parse_field, square_class_reduce
from .gw import GWElement, gw_equal, witt_equal
from .intersect import find_transverse_intersections
from .oracle import oracle_multiplicity, verify_main_theorem
from .tropical import EnrichedHypersurface

__all__ = [
    "EnrichedHypersurface",
    "FieldSpec",
    "GWElement",
    "QQ",
    "RR",
    "enriched_multiplicity",
    "find_transverse_intersections",
    "gw_equal",
    "oracle_multiplicity",
    "parse_field",
    "square_class_reduce",
    "total_enriched_count",
    "verify_main_theorem",
    "witt_equal",
]
