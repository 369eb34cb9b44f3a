from .weights import LAMBDA_0, LAMBDA_1, MonomialValuation  # noqa: F401
from .polytopes import (  # noqa: F401
    SlabPolytope,
    Vertex3,
    enumerate_vertices,
    integral_linear_over_slab,
    layer_cake_integral,
    scaling_check,
    slice_volume,
    slice_volume_function,
)
from .invariants import (  # noqa: F401
    FutakiReport,
    FutakiValue,
    a_invariant_valuation,
    beta_valuation,
    futaki_value,
    futaki_vanishing_check,
    s_invariant_valuation,
    valuation_slab,
    vol_ray_valuation,
    volume_integral_valuation,
)
