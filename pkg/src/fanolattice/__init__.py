"""Exact tools for smooth toric Fano polytopes: face fans, primitive
relations, lattice automorphisms, fibre-likeness, the barycentre test and
classification by dimension."""
from __future__ import annotations

from .canonical import CanonicalForm, canonical_form
from .catalog import (
    CatalogEntry,
    catalog_entries,
    del_pezzo_polytope,
    power,
    product,
    projective_space,
    weighted_projective,
)
from .classify import (
    AnalysisReport,
    ClassificationRow,
    analyze,
    classify_fibre_like,
    conjecture_check,
    property_suite,
)
from .errors import (
    ClassificationUnavailable,
    DegeneratePolytopeError,
    DimensionMismatchError,
    DuplicateVertexError,
    FanoLatticeError,
    InvariantViolation,
    NonPrimitiveVertexError,
    NotAVertexError,
    NotSimplicialError,
    NotSmoothError,
    OriginNotInteriorError,
    ParseError,
    PolytopeError,
    SearchBudgetExceeded,
)
from .io import ResultStore, format_polytope, ingest_database, parse_polytope
from .kstability import KStabilityVerdict, k_stability, main_theorem_check
from .polytope import LatticePolytope, centroid, lattice_points, polar_dual, vertex_sum, volume
from .primitive import (
    PrimitiveCollection,
    PrimitiveRelation,
    primitive_collections,
    primitive_relation,
    primitive_relations,
    trivial_focus_collections,
)
from .search import EnumerationResult, enumerate_smooth_fano
from .symmetry import LatticeAutGroup, OrbitData, automorphism_group, burnside_check, is_fibre_like, orbit_data
from .toric import face_fan, is_reflexive, is_smooth, is_terminal, picard_rank

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CanonicalForm",
    "CatalogEntry",
    "ClassificationRow",
    "ClassificationUnavailable",
    "DegeneratePolytopeError",
    "DimensionMismatchError",
    "DuplicateVertexError",
    "EnumerationResult",
    "FanoLatticeError",
    "InvariantViolation",
    "KStabilityVerdict",
    "LatticeAutGroup",
    "LatticePolytope",
    "NonPrimitiveVertexError",
    "NotAVertexError",
    "NotSimplicialError",
    "NotSmoothError",
    "OrbitData",
    "OriginNotInteriorError",
    "ParseError",
    "PolytopeError",
    "PrimitiveCollection",
    "PrimitiveRelation",
    "ResultStore",
    "SearchBudgetExceeded",
    "analyze",
    "annotations",
    "automorphism_group",
    "burnside_check",
    "canonical_form",
    "catalog_entries",
    "centroid",
    "classify_fibre_like",
    "conjecture_check",
    "del_pezzo_polytope",
    "enumerate_smooth_fano",
    "face_fan",
    "format_polytope",
    "ingest_database",
    "is_fibre_like",
    "is_reflexive",
    "is_smooth",
    "is_terminal",
    "k_stability",
    "lattice_points",
    "main_theorem_check",
    "orbit_data",
    "parse_polytope",
    "picard_rank",
    "polar_dual",
    "power",
    "primitive_collections",
    "primitive_relation",
    "primitive_relations",
    "product",
    "projective_space",
    "property_suite",
    "trivial_focus_collections",
    "vertex_sum",
    "volume",
    "weighted_projective",
]
