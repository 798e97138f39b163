"""Exact combinatorics of motivic decompositions of Severi-Brauer varieties.

The package mechanizes the split-level bookkeeping of Chow motives of
Severi-Brauer varieties of p-primary division algebras: Gaussian binomials
and box-bounded partition counts with arbitrary-precision integers, formal
direct sums of Tate-twisted motives under Krull-Schmidt semantics, the
function-field decomposition rules with their conservation identities, and a
rule calculus that derives type bounds, indecomposability and rigidity
conclusions as replayable proof traces.
"""

from .errors import DomainError, EngineError, UnsupportedOperationError
from .motive import (
    TATE,
    DivisionContext,
    ExtremeTerms,
    MotiveExpr,
    MotiveObject,
    SBProduct,
    TateUnit,
    Term,
    UpperMotive,
    dim_upper_motive,
    normalize_object,
    object_sort_key,
)
from .qpoly import (
    GradedRankPoly,
    PartitionBoxSpec,
    count_partitions_by_enumeration,
    count_partitions_in_box,
    enumerate_partitions_in_box,
    gaussian_binomial,
)
from .severi_brauer import (
    CaseClassification,
    ChowOrderReport,
    CoverageReason,
    PrimaryCase,
    SBVariety,
    classify_reduced_dimension,
    function_field_decomposition,
    function_field_endpoints,
    mu,
    rational_chow_order,
)
from .type_calculus import (
    RULE_CATALOG,
    DimensionObstruction,
    IndecomposabilityJudgment,
    IndecomposabilityStatus,
    ProofStep,
    ProofTrace,
    RigidityJudgment,
    RigidityStatus,
    Rule,
    TypeBound,
    dimension_obstruction,
    indecomposability_judgment,
    rigidity_judgment,
    type_bound,
)
from .verify import IdentityResult, SuiteReport, run_identity_suite

__version__ = "0.1.0"

__all__ = [
    "EngineError",
    "DomainError",
    "UnsupportedOperationError",
    "GradedRankPoly",
    "PartitionBoxSpec",
    "gaussian_binomial",
    "count_partitions_in_box",
    "count_partitions_by_enumeration",
    "enumerate_partitions_in_box",
    "DivisionContext",
    "TateUnit",
    "TATE",
    "UpperMotive",
    "SBProduct",
    "MotiveObject",
    "Term",
    "MotiveExpr",
    "ExtremeTerms",
    "normalize_object",
    "object_sort_key",
    "dim_upper_motive",
    "SBVariety",
    "ChowOrderReport",
    "mu",
    "rational_chow_order",
    "function_field_decomposition",
    "function_field_endpoints",
    "CoverageReason",
    "PrimaryCase",
    "CaseClassification",
    "classify_reduced_dimension",
    "Rule",
    "RULE_CATALOG",
    "ProofStep",
    "ProofTrace",
    "DimensionObstruction",
    "dimension_obstruction",
    "TypeBound",
    "type_bound",
    "IndecomposabilityStatus",
    "IndecomposabilityJudgment",
    "indecomposability_judgment",
    "RigidityStatus",
    "RigidityJudgment",
    "rigidity_judgment",
    "IdentityResult",
    "SuiteReport",
    "run_identity_suite",
]
