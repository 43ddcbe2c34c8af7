from .smooth import (
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    FD_STEP,
    Curve,
    ProbeReport,
    RealFunction,
    SmoothMap,
    TwoParamMap,
    deriv_at_zero,
    mixed_partial_at_zero,
    scalar_deviations,
    surface_deviations,
    smoothness_probe,
)
