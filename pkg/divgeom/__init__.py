from .classes import (  # noqa: F401
    ANTICANONICAL,
    ANTICANONICAL_VOLUME,
    DivisorClass,
    DivisorOnY,
    LogPairY,
    beta_divisor,
    cube,
    invariant_divisors,
    is_big,
    is_nef,
    is_pseff,
    log_discrepancy,
    s_invariant,
    torus_surface,
    vol_ray,
    volume,
    zariski_positive_part,
)
