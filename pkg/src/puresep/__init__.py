"""Full-separability tests for multipartite pure states."""

from .criteria import (
    PartyEvidence,
    Verdict,
    Witness,
    classify,
    det_criterion,
    extract_factors,
    minor_criterion,
    proportionality_criterion,
    rank_criterion,
)
from .density import ReducedDensity, gram_large, gram_small, gram_spectrum, partial_trace
from .errors import (
    CriteriaConflict,
    DegenerateStateError,
    EntangledStateError,
    NotNormalizedError,
    NumericalFailure,
    SeparabilityError,
    ShapeError,
)
from .oracle import OracleReport, cross_validate, oracle_schmidt
from .state import (
    DimensionProfile,
    PureState,
    ToleranceConfig,
    basis_state,
    cat_state,
    flat_index,
    inner_product,
    multi_index,
    normalize,
    perturb,
    product_state,
    random_product_factors,
    random_product_state,
    random_state,
    w_state,
)
from .unfolding import ModeUnfolding, PrunedUnfolding, build_unfolding, prune

__version__ = "0.1.0"
