"""
Núcleo matemático: aritmética de F_q, predicados, construcciones, cotas,
certificados y búsqueda exacta
"""

from .bounds import BoundReport, bounds_table
from .certify import Certificate, FqMatrix, p_eval_matrix, rank_gf
from .constructions import CONSTRUCTIONS, build_construction
from .fqlin import BoundValue, FieldSpec, FVec, binomial, dot, fvec
from .kinds import ConfigurationKind
from .pointset import PointSet, point_set, read_point_set
from .predicates import ScanReport, ScanStatus, Violation, scan_set
from .search import ConflictInstance, SearchResult, SearchStatus, exact_search

__all__ = [
    "BoundReport",
    "BoundValue",
    "CONSTRUCTIONS",
    "Certificate",
    "ConfigurationKind",
    "ConflictInstance",
    "FVec",
    "FieldSpec",
    "FqMatrix",
    "PointSet",
    "ScanReport",
    "ScanStatus",
    "SearchResult",
    "SearchStatus",
    "Violation",
    "binomial",
    "bounds_table",
    "build_construction",
    "dot",
    "exact_search",
    "fvec",
    "p_eval_matrix",
    "point_set",
    "rank_gf",
    "read_point_set",
    "scan_set",
]
