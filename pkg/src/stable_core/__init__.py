"""stable-core: unique stable matchings via reduction to normal form.

A market instance is reduced by repeatedly deleting mutually unattractive
worker-firm pairs; the fixpoint (the normal form) has the same stable
matchings as the original and decides uniqueness: the stable matching is
unique exactly when the surviving digraph is acyclic, exactly when it has
collapsed to a single matching.
"""

from .digraph import (
    MatchingDigraph,
    PreferenceCycle,
    Vertex,
    build_digraph,
    export_dot,
    find_preference_cycle,
    has_directed_cycle,
)
from .enumeration import (
    ExpansionState,
    equivalent_instances_bruteforce,
    expand_reinsertions,
    generate_equivalent_instances,
)
from .errors import (
    FormatError,
    IdOutOfRangeError,
    InvalidPivotError,
    NotAPermutationError,
    SizeMismatchError,
    SizeTooLargeError,
    StableCoreError,
    UnclassifiableVertexError,
    VertexDeletedError,
)
from .experiments import (
    FractionEstimate,
    NormalFormStats,
    normal_form_size_census,
    normal_form_size_stats,
    uniqueness_census,
    uniqueness_fraction,
    wilson_interval,
)
from .model import (
    Instance,
    Matching,
    all_instances,
    parse_instance,
    parse_matching,
    random_instance,
    random_instances,
    serialize_instance,
    serialize_matching,
)
from .reduction import (
    NormalForm,
    ReductionStep,
    SurvivorTag,
    UniquenessReport,
    classify_survivors,
    extremal_matchings,
    normal_form,
    normal_form_by_pivots,
    pivot_reduction,
    prune_round,
    unattractive_pairs,
    uniqueness_report,
)
from .stability import (
    blocking_pairs,
    deferred_acceptance,
    deferred_acceptance_lists,
    enumerate_stable_matchings,
    is_kernel,
    is_stable,
    is_unique_via_da,
    matching_vertices,
    stable_matchings_in,
)

__version__ = "0.1.0"

__all__ = [
    "FormatError",
    "FractionEstimate",
    "IdOutOfRangeError",
    "Instance",
    "InvalidPivotError",
    "Matching",
    "MatchingDigraph",
    "NormalForm",
    "NormalFormStats",
    "NotAPermutationError",
    "PreferenceCycle",
    "ReductionStep",
    "SizeMismatchError",
    "SizeTooLargeError",
    "StableCoreError",
    "SurvivorTag",
    "UnclassifiableVertexError",
    "UniquenessReport",
    "Vertex",
    "VertexDeletedError",
    "ExpansionState",
    "all_instances",
    "blocking_pairs",
    "build_digraph",
    "classify_survivors",
    "deferred_acceptance",
    "deferred_acceptance_lists",
    "enumerate_stable_matchings",
    "equivalent_instances_bruteforce",
    "expand_reinsertions",
    "export_dot",
    "extremal_matchings",
    "find_preference_cycle",
    "generate_equivalent_instances",
    "has_directed_cycle",
    "is_kernel",
    "is_stable",
    "is_unique_via_da",
    "matching_vertices",
    "normal_form",
    "normal_form_by_pivots",
    "normal_form_size_census",
    "normal_form_size_stats",
    "parse_instance",
    "parse_matching",
    "pivot_reduction",
    "prune_round",
    "random_instance",
    "random_instances",
    "serialize_instance",
    "serialize_matching",
    "stable_matchings_in",
    "unattractive_pairs",
    "uniqueness_census",
    "uniqueness_fraction",
    "uniqueness_report",
    "wilson_interval",
]
