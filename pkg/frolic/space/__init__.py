from .space import (
    DEFAULT_EQ_TOL,
    DEFAULT_PROBE_COUNT,
    Chart,
    FiniteSupportFunction,
    SpaceDescriptor,
    check_descriptor,
    mapping_curve_probe,
    probe_functions,
    product,
    projection,
    saturation_probe,
    subset,
)
from .builtins import (
    angle_chart,
    builtin_space,
    circle,
    coordinate_cross,
    coordinate_functions,
    default_supports,
    euclidean,
    flat,
    identity_chart,
    r_power,
    space_names,
)
