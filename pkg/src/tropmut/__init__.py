"""Exact invariants of tropical mutation surfaces over the rank-two polyptych lattice ``M_s``."""

from .detrop import FactoredPoly
from .errors import InternalInconsistency, ParseError, TropmutError, ValidationError
from .polyptych import PLPolytope, TropicalPoint, build_polytope, mutate
from .surface import SurfaceInput

__version__ = "0.1.0"
SCHEMA_VERSION = "1"

__all__ = [
    "FactoredPoly",
    "InternalInconsistency",
    "ParseError",
    "TropmutError",
    "ValidationError",
    "PLPolytope",
    "TropicalPoint",
    "build_polytope",
    "mutate",
    "SurfaceInput",
    "__version__",
    "SCHEMA_VERSION",
]
