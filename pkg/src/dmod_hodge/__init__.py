"""Exact Hodge-theoretic invariants of hypersurfaces via Weyl-algebra Groebner bases."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AlphaRangeError,
    ConstantInputError,
    DmodHodgeError,
    InternalError,
    LevelInsufficientError,
    NotReducedError,
    PolyParseError,
    UnknownVariableError,
    ValidationError,
)
from .polys import MonomialOrder, Poly, UniPoly  # noqa: E402
from .weyl import AlgebraSignature, VectorElement, WeylElement  # noqa: E402
from .dmod import (  # noqa: E402
    AnnFs,
    BernsteinSato,
    ann_fs,
    bernstein_sato,
    default_level_hint,
    minimal_exponent,
)
from .vfiltration import (  # noqa: E402
    VFiltrationResult,
    VPiece,
    candidate_window,
    gpv,
    lookup_piece,
    vectors_at_level,
)
from .hodge import (  # noqa: E402
    HodgeIdeal,
    MultiplierFamily,
    extend_by_derivations,
    generating_level,
    hodge_ideals,
    ideal_equal,
    multiplier_ideals,
)
from .parsing import parse_poly, parse_rational  # noqa: E402
from .cache import ArtifactCache  # noqa: E402

__all__ = [
    "__version__",
    "AlphaRangeError",
    "ConstantInputError",
    "DmodHodgeError",
    "InternalError",
    "LevelInsufficientError",
    "NotReducedError",
    "PolyParseError",
    "UnknownVariableError",
    "ValidationError",
    "MonomialOrder",
    "Poly",
    "UniPoly",
    "AlgebraSignature",
    "VectorElement",
    "WeylElement",
    "AnnFs",
    "BernsteinSato",
    "ann_fs",
    "bernstein_sato",
    "default_level_hint",
    "minimal_exponent",
    "VFiltrationResult",
    "VPiece",
    "candidate_window",
    "gpv",
    "lookup_piece",
    "vectors_at_level",
    "HodgeIdeal",
    "MultiplierFamily",
    "extend_by_derivations",
    "generating_level",
    "hodge_ideals",
    "ideal_equal",
    "multiplier_ideals",
    "parse_poly",
    "parse_rational",
    "ArtifactCache",
]
