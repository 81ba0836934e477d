from .bounds import (
    BOUNDS,
    BoundSpec,
    CouponBound,
    DriftTail,
    additive_bounds,
    adaptive_ub,
    coupon_bound,
    cutoff_fixed_ea,
    cutoff_leadingones,
    cutoff_onemax,
    get_bound,
    hcy_onemax,
    lb_leadingones,
    lb_nlogn_term,
    lb_parallel_term,
    lb_unique,
    ln_plus,
    tail_lower,
    tail_upper,
    ub_leadingones,
)
from .lemmas import (
    D_DROP_CHAIN,
    D_FREE_RIDERS,
    ETA_DROP_CHAIN,
    ETA_FREE_RIDERS,
    GAMMA_POTENTIAL,
    TAIL_CONSTANT,
    LemmaReport,
    chvatal_point_check,
    drop_chain_series,
    exact_vs_log_max_error,
    expected_max_bound,
    expected_max_drop,
    mc_check_max_geometric,
    mgf_series_value,
    multibit_nstar,
    verify_chvatal,
    verify_coupon,
    verify_delta_symmetry,
    verify_hypergeom_tail,
    verify_improve_prob,
    verify_max_geometric,
    verify_mgf_bound,
    verify_multibit_progress,
)
from .pmf import (
    EXACT,
    LOG,
    Pmf,
    ProgressParams,
    delta0_pmf,
    delta0_point_log_prob,
    delta0_point_prob,
    delta0_tail_prob,
    hypergeom_log_pmf,
    hypergeom_pmf,
    hypergeom_support,
    log_comb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
