"""arcify: extract injective arcs from self-intersecting paths.

Paths are exact finitely-described objects (rational polylines or label
sequences).  The library finds maximal families of cancellable subloops,
collapses them through monotone PL surjections, and certifies the reduced
path injective.
"""

from .cancellation import (
    LoopCancellation,
    Verdict,
    chain_upper_bound,
    empty_cancellation,
    is_collapsible,
    loop_deletion_witness,
    merge_adjacent,
    validate_cancellation,
)
from .coincidence import CoincidenceSet, candidate_endpoints, coincidence_set
from .errors import (
    ArcError,
    DocumentError,
    EndpointMismatchError,
    FingerprintMismatchError,
    IsLoopError,
    NotAChainError,
    NotALoopError,
    NotCollapsibleError,
    OverlapError,
    PremiseFailedError,
    ReductionVerificationError,
)
from .params import (
    IntervalFamily,
    OpenInterval,
    Ordering,
    Param,
    as_param,
    compare_families,
    interval_membership,
    normalize_family,
)
from .paths import (
    DiscretePath,
    PathHandle,
    Point,
    PolylinePath,
    concat,
    evaluate,
    fingerprint,
    is_loop,
    reparam_equivalent,
    reverse,
)
from .reduction import (
    CollapsingMap,
    ReductionResult,
    cantor_collapsing_map,
    collapse_path,
    collapsing_map,
    extract_arc,
    image_contained,
    injectivity_witness,
    maximalize,
    middle_thirds_family,
    point_in_trace,
    u_reduction,
)

__all__ = [
    "ArcError",
    "CoincidenceSet",
    "CollapsingMap",
    "DiscretePath",
    "DocumentError",
    "EndpointMismatchError",
    "FingerprintMismatchError",
    "IntervalFamily",
    "IsLoopError",
    "LoopCancellation",
    "NotAChainError",
    "NotALoopError",
    "NotCollapsibleError",
    "OpenInterval",
    "Ordering",
    "OverlapError",
    "Param",
    "PathHandle",
    "Point",
    "PolylinePath",
    "PremiseFailedError",
    "ReductionResult",
    "ReductionVerificationError",
    "Verdict",
    "as_param",
    "candidate_endpoints",
    "cantor_collapsing_map",
    "chain_upper_bound",
    "coincidence_set",
    "collapse_path",
    "collapsing_map",
    "compare_families",
    "concat",
    "empty_cancellation",
    "evaluate",
    "extract_arc",
    "fingerprint",
    "image_contained",
    "injectivity_witness",
    "interval_membership",
    "is_collapsible",
    "is_loop",
    "loop_deletion_witness",
    "maximalize",
    "merge_adjacent",
    "middle_thirds_family",
    "normalize_family",
    "point_in_trace",
    "reparam_equivalent",
    "reverse",
    "u_reduction",
    "validate_cancellation",
]
