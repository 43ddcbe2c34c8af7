from .tangent import (
    TANGENT_TOL,
    SecondTangentVector,
    TangentVector,
    chart_consistency,
    generators_with_pairing,
    pairing,
    product_join,
    product_split,
    sample_tangent,
    scalar_mul,
    second_tangent_map,
    tangent_deviation,
    tangent_equal,
    tangent_map,
    tx_curve_check,
    zero_vector,
)
