from .lie import (
    LieVector,
    StructureTable,
    T2Decomposition,
    TrivializedTangent,
    adjoint,
    bracket,
    commutator_second_tangent,
    coordinates_to_tangent,
    derivation_apply,
    derivation_second,
    iota_first,
    iota_second,
    lie_vector_to_tangent,
    semidirect_mul,
    structure_constants,
    t2_decompose,
    trivialize,
    untrivialize,
    xi,
    xi_inverse,
)
from .verify import (
    AXIOM_TOLS,
    SUITES,
    VerificationReport,
    pushforward_bracket_check,
    rj_isomorphism_check,
    run_suite,
    run_trials,
    verify_comm_identity,
    verify_functoriality,
    verify_lie_axioms,
    verify_matrix_oracle,
    verify_mixed_partial_identity,
    verify_product_iso,
    verify_saturation,
    verify_t2_corollary,
    verify_trivialization,
    verify_xi_section,
)
