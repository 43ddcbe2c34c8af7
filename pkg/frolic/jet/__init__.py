from .jet import (
    Jet2,
    Jet2Matrix,
    Scalar,
    allclose,
    atan,
    atan2,
    concatenate,
    cos,
    diagonal_seed,
    exp,
    horner,
    is_jet,
    lift,
    log,
    pow,
    ravel,
    reciprocal,
    reshape,
    s_seed,
    sin,
    sqrt,
    stack,
    t_seed,
    total,
    trace,
    transpose,
    value,
)
from .matrix import (
    PIVOT_THRESHOLD,
    from_entries,
    identity,
    matrix_invert,
    value_inverse,
)
