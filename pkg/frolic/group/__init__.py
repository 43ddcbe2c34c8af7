from .group import (
    AXIOM_TOL,
    FrolicherGroupDescriptor,
    MatrixAlgebra,
    chart_line,
    check_group_axioms,
    left_translate,
    right_translate,
    sample_lie_tangent,
    sample_point,
    sample_tangent_at,
    tangent_add,
    tangent_neg,
    tg_mul,
    zero_tangent,
)
from .loop import (
    analyze,
    from_spectrum,
    loop_group,
    loop_nodes,
    quadrature_nodes,
    spectrum,
    synthesize,
)
from .builtins import (
    additive,
    builtin_group,
    diagonal_algebra,
    gl,
    group_from_spec,
    group_names,
    hat,
    heisenberg3,
    product_group,
    r_power,
    sl2,
    so3,
    so3_exp,
    so3_log,
    torus2,
    wrap,
)
from .homomorphisms import (
    GroupHomomorphism,
    check_homomorphism,
    conjugation,
    heisenberg_center_quotient,
    identity_homomorphism,
    loop_evaluation,
)
