"""Convex-ear decompositions of rank-selected posets, with machine-checked certificates."""

from .ced import build_ears, piece_sequence, verify_ced
from .complex import SimplicialComplex
from .errors import EarcombError
from .pipelines import BooleanPipeline, FacePosetPipeline, GeometricPipeline, inequality_checks
from .poset import RankedPoset

__all__ = [
    "BooleanPipeline",
    "EarcombError",
    "FacePosetPipeline",
    "GeometricPipeline",
    "RankedPoset",
    "SimplicialComplex",
    "build_ears",
    "inequality_checks",
    "piece_sequence",
    "verify_ced",
]
