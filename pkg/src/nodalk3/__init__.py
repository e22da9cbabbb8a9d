"""Exact-arithmetic classifier for stable spherical sheaves on nodal K3 surfaces."""

from .infinitesimal import (
    EPS,
    EPSP,
    ONE,
    ZERO,
    EpsPoly,
    EpsRational,
    ZeroDenominatorError,
    compare,
)
from .lattice import (
    DivisorClass,
    LatticeError,
    MukaiVector,
    NSLattice,
    ProblemInstance,
    euler_char,
    intersect,
    is_minimal_pell_pair,
    mukai_pair,
    pell_solutions,
    twist_by_line,
)
from .plane import (
    Charge,
    ChargeVanishesError,
    DegenerateWallError,
    LimitPhase,
    NumericalWall,
    PolarizationPath,
    SigmaU,
    VerticalLine,
    VerticalWallError,
    central_charge,
    effectivity_defect,
    limit_phase_class,
    phase_compare,
    pivotal_wall,
    slope_at_sigma_u,
    wall_of,
)
from .search import (
    Candidate,
    Classification,
    InternalInvariantError,
    Kind,
    Outcome,
    SearchResult,
    Verdict,
    check_candidate_s,
    check_candidate_t,
    check_candidate_v,
    classify,
    classify_with_search,
    default_bounds,
    exclude_rank_zero,
    m_from_ke,
    search_all,
    vv_prime,
)
from .splitting import SplittingError, descends, hom_criterion_agrees, hom_dim_on_l

__all__ = [name for name in dir() if not name.startswith("_")]
