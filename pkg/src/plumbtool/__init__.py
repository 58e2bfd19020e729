"""Plumbing graphs of 3-manifolds: intersection forms, calculus moves,
Brieskorn plumbings and parameterised graph families."""

__version__ = "0.1.0"

from .calculus import (
    FREE,
    MoveKind,
    MoveRecord,
    ReductionReport,
    Verdict,
    blow_down,
    blow_up,
    reduce_to_normal_form,
    same_boundary,
    zero_chain_absorb,
)
from .errors import (
    DomainError,
    GraphError,
    IllegalMoveError,
    InternalError,
    NotReducedError,
    NotStarError,
    PlumbingError,
    TranscriptionError,
)
from .families import ClaimReport, Family, FamilySpec, generate, verify_claims
from .form import (
    graph_determinant,
    graph_signature,
    intersection_matrix,
    is_homology_sphere,
    is_negative_definite,
    is_unimodular,
)
from .graph import PlumbingGraph, build_graph, canonical_code, chain, classify, is_isomorphic, star
from .io import load_graph, parse_graph
from .seifert import (
    Obstruction,
    SeifertData,
    brieskorn_plumbing,
    central_weight_obstruction,
    neg_cont_frac,
    seifert_data_from_star,
)
