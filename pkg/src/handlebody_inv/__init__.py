"""Orientation-preserving involutions of handlebodies via equivariant graph spines."""
from .canonical import (
    CanonicalForm,
    boundary_collisions,
    build_free,
    build_hyperelliptic_bouquet,
    build_nonfree,
    count_classes,
    enumerate_classes,
)
from .census import CensusReport, enumerate_models, verify_theorem
from .classify import TheoremViolation, classify, same_class
from .invariants import (
    BoundaryData,
    FixedSetSummary,
    QuotientData,
    boundary_data,
    fixed_set,
    genus,
    is_free,
    quotient,
)
from .model import (
    AXIAL,
    INVERTED,
    InvalidModelError,
    Model,
    ModelBuilder,
    SearchBudgetExceeded,
    SpineError,
    ValidationReport,
    equivariant_isomorphic,
    validate,
)
from .moves import (
    attach_axial_edge,
    attach_inverted_loop,
    attach_moved_pair,
    contract,
    hyperelliptic_diagnostic,
    normalize,
    split,
)
from .textfmt import ParseError, parse_model, serialize_model

__version__ = "0.1.0"
