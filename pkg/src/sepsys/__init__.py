"""Strongly, weakly and chord separated set-systems and their geometric models."""
from .subsets import (Kind, complement, greedy_complete, is_maximal_in, is_separated_collection,
                      maximal_collections, rank_formula, separated, subset, surrounds,
                      verify_purity)
from .tiling import Tiling, antistandard_tiling, standard_tiling, tiling_from_s_collection
from .combi import QuasiCombi, combi_from_w_collection, normalize_to_combi, triangulate
from .cubillage import Cubillage, cubillage_from_c_collection, validate_cubillage
from .fragmentation import fragment, w_membrane_for_w_collection
from .wextend import extend_w_to_c, verify_extension

__version__ = "0.1.0"

__all__ = [
    "Kind", "complement", "greedy_complete", "is_maximal_in", "is_separated_collection",
    "maximal_collections", "rank_formula", "separated", "subset", "surrounds", "verify_purity",
    "Tiling", "antistandard_tiling", "standard_tiling", "tiling_from_s_collection",
    "QuasiCombi", "combi_from_w_collection", "normalize_to_combi", "triangulate",
    "Cubillage", "cubillage_from_c_collection", "validate_cubillage",
    "fragment", "w_membrane_for_w_collection", "extend_w_to_c", "verify_extension",
]
