"""monokit: exact rational computation with set-valued monotone operators.

Operators on Q^n are represented by their graphs, stored as finite unions of
closed convex polyhedra in Q^(2n).  Everything downstream (operator algebra,
monotonicity certificates, range identities) is computed exactly.
"""

from .analysis import (
    BoundStatus,
    SimeqVerdict,
    ThreeStarVerdict,
    bh_inf_status,
    check_3star,
    check_lemma2,
    check_maximal,
    check_monotone,
    rint_range_identity,
    simeq,
)
from .config import Limits, limits, scoped_limits, set_limits
from .errors import (
    DimensionMismatch,
    IncompleteAnalysisError,
    InputError,
    InternalCheckError,
    MonokitError,
    PreconditionError,
    ResourceLimitError,
)
from .linalg import Matrix, Q, Subspace, Vector, as_q
from .operators import (
    LinearRelation,
    Operator,
    Scenario,
    adjoint,
    apply_operator,
    composite,
    congruence_transform,
    dr_displacement,
    graph_union,
    identity_operator,
    image_of_set,
    inverse,
    kuhn_tucker,
    linear_relation_from_generators,
    linear_relation_from_matrix,
    make_operator,
    matrix_operator,
    normal_cone_operator,
    op_compose,
    op_domain,
    op_range,
    op_sum,
    product_operator,
    pwl1d_operator,
    reflected_resolvent,
    relation_operator,
    resolvent,
    sandwich,
    scale_output,
    zero_operator,
)
from .polyhedra import (
    Polyhedron,
    PolySet,
    Verdict,
    convex_hull,
    intersect,
    minkowski_sum,
    polyset_contains,
    polyset_equal,
    polyset_intersect,
    polyset_minkowski,
    polyset_union,
    rel_interior_point,
)
from .reports import HypothesisResult, Report, derive_status
from .theorems import (
    W_BOTH,
    W_FULL_DOMAIN,
    W_FULL_RANGE,
    WMode,
    builtin_scenarios,
    chain_inequality_holds,
    custom_w,
    run_builtin,
    verify_corollary_surjective,
    verify_domain_description,
    verify_kt_range,
    verify_reflected_composition,
    verify_sum_range_bound,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "Q",
    "as_q",
    "Vector",
    "Matrix",
    "Subspace",
    "Limits",
    "limits",
    "set_limits",
    "scoped_limits",
    "MonokitError",
    "InputError",
    "DimensionMismatch",
    "PreconditionError",
    "ResourceLimitError",
    "IncompleteAnalysisError",
    "InternalCheckError",
    "Polyhedron",
    "PolySet",
    "Verdict",
    "intersect",
    "minkowski_sum",
    "convex_hull",
    "rel_interior_point",
    "polyset_union",
    "polyset_intersect",
    "polyset_minkowski",
    "polyset_contains",
    "polyset_equal",
    "Operator",
    "LinearRelation",
    "Scenario",
    "make_operator",
    "identity_operator",
    "zero_operator",
    "matrix_operator",
    "relation_operator",
    "normal_cone_operator",
    "pwl1d_operator",
    "product_operator",
    "graph_union",
    "linear_relation_from_matrix",
    "linear_relation_from_generators",
    "adjoint",
    "inverse",
    "op_sum",
    "op_compose",
    "sandwich",
    "composite",
    "scale_output",
    "congruence_transform",
    "kuhn_tucker",
    "resolvent",
    "reflected_resolvent",
    "dr_displacement",
    "apply_operator",
    "image_of_set",
    "op_domain",
    "op_range",
    "BoundStatus",
    "SimeqVerdict",
    "ThreeStarVerdict",
    "bh_inf_status",
    "check_monotone",
    "check_maximal",
    "check_3star",
    "simeq",
    "check_lemma2",
    "rint_range_identity",
    "Report",
    "HypothesisResult",
    "derive_status",
    "WMode",
    "W_BOTH",
    "W_FULL_DOMAIN",
    "W_FULL_RANGE",
    "custom_w",
    "verify_theorem1",
    "verify_corollary_surjective",
    "verify_domain_description",
    "verify_theorem2",
    "verify_kt_range",
    "verify_reflected_composition",
    "verify_sum_range_bound",
    "chain_inequality_holds",
    "builtin_scenarios",
    "run_builtin",
    "__version__",
]
