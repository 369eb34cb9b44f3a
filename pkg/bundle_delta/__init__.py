from .formula import (  # noqa: F401
    BundleDeltaInput,
    DeltaBreakdown,
    MeanCoefficientCheck,
    delta_bundle,
    delta_conic_pair,
    family_a_closed_forms,
    family_a_terms,
    find_balanced_c,
    mean_coefficient_check,
)
