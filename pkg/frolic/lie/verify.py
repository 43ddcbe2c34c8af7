import math
import numpy as np

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

from frolic.errors import InvalidParameter
from frolic.group import (
    AXIOM_TOL,
    FrolicherGroupDescriptor,
    GroupHomomorphism,
    check_group_axioms,
    check_homomorphism,
    conjugation,
    r_power,
    sample_lie_tangent,
    sample_point,
    sample_tangent_at,
    tangent_add,
    tg_mul,
    zero_tangent,
)
from frolic.jet import lift, s_seed, sin
from frolic.lie.lie import (
    bracket,
    commutator_second_tangent,
    derivation_apply,
    derivation_second,
    lie_vector_to_tangent,
    semidirect_mul,
    t2_decompose,
    trivialize,
    untrivialize,
    xi,
    xi_inverse,
)
from frolic.log import get_logger
from frolic.smooth import DEFAULT_TOL, Curve, ProbeReport, SmoothMap, TwoParamMap, mixed_partial_at_zero
from frolic.space import SpaceDescriptor, check_descriptor, circle, probe_functions, product
from frolic.tangent import (
    TangentVector,
    chart_consistency,
    product_join,
    product_split,
    sample_tangent,
    scalar_mul,
    second_tangent_map,
    tangent_deviation,
    tangent_map,
    tx_curve_check,
    zero_vector,
)

logger = get_logger(__name__)

DEFAULT_TRIALS = 50
DEFAULT_SEED = 42
IDENTITY_TOL = 1e-10
PIPELINE_TOL = 1e-8
# per-criterion ceilings of the axioms suite
AXIOM_TOLS = {"antisymmetry": 1e-10, "bilinearity": 1e-9, "jacobi": 1e-8}
RJ_SMOOTH_SAMPLES = (-0.3, 0.0, 0.3)

Deviations = Dict[str, float]


def _worst(a: float, b: float) -> float:
    if math.isnan(a) or math.isnan(b):
        return math.nan
    return max(a, b)


def _gap(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), initial=0.0))


@dataclass
class VerificationReport:
    """
    Outcome of a verification suite.

    Reports of disjoint trial ranges of the same suite, group and seed
    combine with merge, which is associative.
    """

    suite: str
    group: str
    trials: int
    worst_abs_dev: float
    passed: bool
    seed: int
    details: Deviations = field(default_factory=dict)

    @classmethod
    def from_deviations(
        cls,
        suite: str,
        group: str,
        deviations: Deviations,
        tol: float,
        seed: int,
        trials: int = 1,
        tols: Optional[Dict[str, float]] = None,
    ) -> "VerificationReport":
        """
        :param tol: Bound for every deviation.
        :param tols: Optional tighter bounds for individual keys.
        """
        worst = 0.0
        passed = True
        for key, deviation in deviations.items():
            worst = _worst(worst, float(deviation))
            bound = min(tol, tols[key]) if tols and key in tols else tol
            passed = passed and bool(float(deviation) <= bound)
        return cls(
            suite=suite,
            group=group,
            trials=trials,
            worst_abs_dev=worst,
            passed=passed,
            seed=seed,
            details={key: float(deviation) for key, deviation in deviations.items()},
        )

    @classmethod
    def from_probe(
        cls, suite: str, group: str, key: str, probe: ProbeReport, seed: int
    ) -> "VerificationReport":
        """A trial-free part carrying a probe's verdict under ``details[key]``."""
        return cls(suite, group, 0, 0.0, probe.passed, seed, {key: probe.worst_deviation})

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        if (self.suite, self.group, self.seed) != (other.suite, other.group, other.seed):
            raise InvalidParameter(
                f"cannot merge reports of {self.suite}/{self.group} and {other.suite}/{other.group}"
            )
        details = dict(self.details)
        for key, deviation in other.details.items():
            details[key] = _worst(details[key], deviation) if key in details else deviation
        return VerificationReport(
            suite=self.suite,
            group=self.group,
            trials=self.trials + other.trials,
            worst_abs_dev=_worst(self.worst_abs_dev, other.worst_abs_dev),
            passed=self.passed and other.passed,
            seed=self.seed,
            details=details,
        )

    def to_dict(self) -> Dict:
        return {
            "suite": self.suite,
            "group": self.group,
            "trials": self.trials,
            "worst_abs_dev": self.worst_abs_dev,
            "pass": self.passed,
            "seed": self.seed,
        }


def run_trials(
    suite: str,
    group: str,
    trial: Callable[[np.random.Generator], Deviations],
    trials: int,
    tol: float,
    seed: int,
    tols: Optional[Dict[str, float]] = None,
) -> VerificationReport:
    """
    Runs ``trial`` once per index with its own generator default_rng([seed, index])
    and merges the per-trial reports in index order.

    ``tols`` tightens the bound of individual deviation keys below ``tol``.
    """
    if trials < 1:
        raise InvalidParameter(f"trials must be positive, got {trials}")
    if seed < 0:
        raise InvalidParameter(f"seed must be non-negative, got {seed}")
    logger.info(f"Running {suite} on {group}: {trials} trials, seed {seed}")
    report: Optional[VerificationReport] = None
    for index in range(trials):
        rng = np.random.default_rng([seed, index])
        part = VerificationReport.from_deviations(suite, group, trial(rng), tol, seed, tols=tols)
        report = part if report is None else report.merge(part)
    logger.info(
        f"Finished {suite} on {group}: worst deviation {report.worst_abs_dev:.3e}, "
        f"{'pass' if report.passed else 'FAIL'}"
    )
    return report


def _pick(probes, rng: np.random.Generator):
    return probes[rng.integers(len(probes))]


def verify_comm_identity(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    D_[v,w] f(g) against D_v D_w f(g) - D_w D_v f(g) at sampled g; the left
    side goes through the commutator curve, the right through translated
    products only.
    """
    probes = probe_functions(group.space, seed=seed)

    def trial(rng):
        v, w = sample_lie_tangent(group, rng), sample_lie_tangent(group, rng)
        f = _pick(probes, rng)
        g = sample_point(group, rng)
        lhs = derivation_apply(group, lie_vector_to_tangent(group, bracket(group, v, w)), f, g)
        rhs = derivation_second(group, v, w, f, g) - derivation_second(group, w, v, f, g)
        return {"comm": abs(lhs - rhs)}

    return run_trials("comm", group.name, trial, trials, tol, seed)


def verify_mixed_partial_identity(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """∂s∂t f(γ) = ∂s∂t [f(c(s)d(t)) - f(d(s)c(t))] at the origin."""
    probes = probe_functions(group.space, seed=seed)
    name, mul = group.space.name, group.mul

    def trial(rng):
        v, w = sample_lie_tangent(group, rng), sample_lie_tangent(group, rng)
        f = _pick(probes, rng)
        c, d = v.rep, w.rep
        lhs = mixed_partial_at_zero(f, commutator_second_tangent(group, v, w).rep)
        forward = TwoParamMap(name, lambda s, t: mul(c(s), d(t)), "c·d")
        backward = TwoParamMap(name, lambda s, t: mul(d(s), c(t)), "d·c")
        rhs = mixed_partial_at_zero(f, forward) - mixed_partial_at_zero(f, backward)
        return {"mixed": abs(lhs - rhs)}

    return run_trials("mixed", group.name, trial, trials, tol, seed)


def verify_lie_axioms(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    Antisymmetry, bilinearity and the Jacobi identity of the bracket, plus
    the sampled group laws under ``details["group"]``.

    Each criterion is held to the smaller of ``tol`` and its AXIOM_TOLS entry.
    """

    def nested(x, y, z) -> np.ndarray:
        return bracket(group, x, lie_vector_to_tangent(group, bracket(group, y, z))).coords

    def trial(rng):
        u, v, w = (sample_lie_tangent(group, rng) for _ in range(3))
        a, b = rng.uniform(-2.0, 2.0, size=2)
        vw, wv = bracket(group, v, w).coords, bracket(group, w, v).coords
        uw = bracket(group, u, w).coords
        combination = tangent_add(group, scalar_mul(a, v), scalar_mul(b, u))
        jacobi = nested(u, v, w) + nested(v, w, u) + nested(w, u, v)
        return {
            "antisymmetry": max(_gap(vw, -wv), _gap(bracket(group, v, v).coords, 0.0)),
            "bilinearity": _gap(bracket(group, combination, w).coords, a * vw + b * uw),
            "jacobi": _gap(jacobi, 0.0),
        }

    report = run_trials("axioms", group.name, trial, trials, tol, seed, tols=AXIOM_TOLS)
    laws = check_group_axioms(group, trials, seed, AXIOM_TOL)
    if not laws.passed:
        logger.warning(f"Group laws of {group.name} fail: {laws.failures[:3]}")
    return report.merge(VerificationReport.from_probe("axioms", group.name, "group", laws, seed))


def verify_trivialization(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """trivialize(tg_mul(v, w)) against semidirect_mul of the trivializations."""
    probes = probe_functions(group.space, seed=seed)

    def trial(rng):
        g, h = sample_point(group, rng), sample_point(group, rng)
        v, w = sample_tangent_at(group, g, rng), sample_tangent_at(group, h, rng)
        lhs = trivialize(group, tg_mul(group, v, w))
        rhs = semidirect_mul(group, trivialize(group, v), trivialize(group, w))
        return {
            "base": _gap(lhs.base, rhs.base),
            "body": tangent_deviation(lhs.body, rhs.body, probes),
            "round-trip": tangent_deviation(untrivialize(group, trivialize(group, v)), v, probes),
        }

    return run_trials("trivialization", group.name, trial, trials, tol, seed)


def verify_product_iso(
    left: SpaceDescriptor,
    right: SpaceDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Split/join round trips for T(X×Y) ≅ TX × TY in both directions."""
    space = product(left, right)
    probes = probe_functions(space, seed=seed)
    left_probes, right_probes = probe_functions(left, seed=seed), probe_functions(right, seed=seed)

    def trial(rng):
        v = sample_tangent(space, rng)
        a, b = product_split(v)
        x, y = sample_tangent(left, rng), sample_tangent(right, rng)
        x2, y2 = product_split(product_join(space, x, y))
        return {
            "join-split": tangent_deviation(product_join(space, a, b), v, probes),
            "split-join": max(
                tangent_deviation(x2, x, left_probes), tangent_deviation(y2, y, right_probes)
            ),
        }

    return run_trials("product-iso", space.name, trial, trials, tol, seed)


def _pushforward_deviations(alpha: GroupHomomorphism, v: TangentVector, w: TangentVector) -> Deviations:
    source, target = alpha.source, alpha.target
    phi = alpha.as_map()
    pushed = tangent_map(phi, lie_vector_to_tangent(source, bracket(source, v, w)), target.space)
    lhs = chart_consistency(pushed)
    rhs = bracket(target, tangent_map(phi, v, target.space), tangent_map(phi, w, target.space))
    commutator = commutator_second_tangent(source, v, w)
    through_t2 = xi_inverse(target, second_tangent_map(phi, commutator, target.space))
    return {"bracket": _gap(lhs, rhs.coords), "aux": _gap(lhs, through_t2.coords)}


def pushforward_bracket_check(
    alpha: GroupHomomorphism, trials: int = DEFAULT_TRIALS, tol: float = 1e-9, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """
    Tα[v, w] against [Tα v, Tα w], together with Tα(Ξ⁻¹ξ) = Ξ⁻¹(T²α ξ) on
    commutator classes ξ.

    :raises NotAHomomorphism: If alpha fails the sampled product law.
    """
    check_homomorphism(alpha, trials, seed, tol)
    source = alpha.source

    def trial(rng):
        v, w = sample_lie_tangent(source, rng), sample_lie_tangent(source, rng)
        return _pushforward_deviations(alpha, v, w)

    return run_trials(
        "pushforward", f"{alpha.source.name}->{alpha.target.name}", trial, trials, tol, seed
    )


def verify_functoriality(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    T(ψ∘φ) = Tψ∘Tφ and linearity of Tφ for random conjugations φ, ψ, and
    the bracket pushforward along φ.
    """
    probes = probe_functions(group.space, seed=seed)
    space = group.space

    def trial(rng):
        phi = conjugation(group, sample_point(group, rng))
        psi = conjugation(group, sample_point(group, rng))
        g = sample_point(group, rng)
        v, v2 = sample_tangent_at(group, g, rng), sample_tangent_at(group, g, rng)
        a = float(rng.uniform(-2.0, 2.0))
        p, q = phi.as_map(), psi.as_map()
        composite = SmoothMap(space.name, space.name, lambda x: psi(phi(x)), "ψ∘φ")
        functor = tangent_deviation(
            tangent_map(composite, v, space), tangent_map(q, tangent_map(p, v, space), space), probes
        )
        scaled = tangent_deviation(
            tangent_map(p, scalar_mul(a, v), space), scalar_mul(a, tangent_map(p, v, space)), probes
        )
        added = tangent_deviation(
            tangent_map(p, tangent_add(group, v, v2), space),
            tangent_add(group, tangent_map(p, v, space), tangent_map(p, v2, space)),
            probes,
        )
        x, y = sample_lie_tangent(group, rng), sample_lie_tangent(group, rng)
        deviations = {"functor": functor, "linearity": max(scaled, added)}
        deviations.update(_pushforward_deviations(phi, x, y))
        return deviations

    return run_trials("functorial", group.name, trial, trials, tol, seed)


def rj_isomorphism_check(
    J_size: int = 100,
    supports: Optional[Sequence[Sequence[int]]] = None,
    trials: int = DEFAULT_TRIALS,
    tol: float = IDENTITY_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    T₀R^J ≅ R^J through φ̄[c] = (c_j'(0))_j.

    Per trial: random curves map to their componentwise derivatives, the
    line t -> t x maps back to x, and curves with vanishing componentwise
    derivatives pair to zero with every declared function. One extra check
    runs tx_curve_check on (s, t) -> t x(s), the inverse applied to a curve.
    """
    group = r_power(J_size, supports)
    space = group.space
    origin = np.zeros(space.point_arity)
    zero = zero_vector(space, origin)

    def velocity(v: TangentVector) -> np.ndarray:
        return np.asarray(lift(v.rep(s_seed())).ds, dtype=float)

    def line(x: np.ndarray) -> TangentVector:
        return TangentVector(space, origin, Curve(space.name, lambda t: t * x, "t·x"))

    def trial(rng):
        x, y, a = (rng.normal(size=space.point_arity) for _ in range(3))
        bent = TangentVector(
            space, origin, Curve(space.name, lambda t: sin(t * x) + (t * t) * y, "sin(t·x) + t²·y")
        )
        kernel = TangentVector(space, origin, Curve(space.name, lambda t: (t * t) * a, "t²·a"))
        return {
            "forward": _gap(velocity(bent), x),
            "inverse": _gap(velocity(line(x)), x),
            "kernel": max(
                _gap(velocity(kernel), 0.0), tangent_deviation(kernel, zero, space.gen_functions)
            ),
        }

    report = run_trials("rj", group.name, trial, trials, tol, seed)
    rng = np.random.default_rng([seed, trials])
    x0, x1, x2 = (rng.normal(size=space.point_arity) for _ in range(3))
    family = TwoParamMap(
        space.name, lambda s, t: t * (x0 + s * x1 + sin(s * x2)), "t·x(s)"
    )
    smooth = tx_curve_check(family, space, RJ_SMOOTH_SAMPLES, DEFAULT_TOL)
    if not smooth.passed:
        logger.warning(f"Inverse of φ̄ along a curve is not smooth: {smooth.failures[:3]}")
    return report.merge(VerificationReport.from_probe("rj", group.name, "smooth", smooth, seed))


def verify_saturation(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    check_descriptor on the group's space. The comparison is against finite
    differences, so the tolerance is never tighter than DEFAULT_TOL.
    """
    logger.info(f"Running saturation on {group.name}")
    probe = check_descriptor(group.space, tol=max(tol, DEFAULT_TOL))
    return VerificationReport(
        suite="saturation",
        group=group.name,
        trials=probe.checks,
        worst_abs_dev=probe.worst_deviation,
        passed=probe.passed,
        seed=seed,
        details={"saturation": probe.worst_deviation},
    )


def verify_xi_section(
    group: FrolicherGroupDescriptor, trials: int = 100, tol: float = IDENTITY_TOL, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """xi_inverse(xi(v)) against the chart velocity of v."""

    def trial(rng):
        v = sample_lie_tangent(group, rng)
        return {"xi-section": _gap(xi_inverse(group, xi(group, v)).coords, chart_consistency(v))}

    return run_trials("xi-section", group.name, trial, trials, tol, seed)


def verify_t2_corollary(
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = IDENTITY_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    t2_decompose of commutator curves: p1 is the identity, p2 and p3 pair
    to zero, and p4 has the same Ξ⁻¹ as the commutator class itself.
    """
    probes = probe_functions(group.space, seed=seed)
    zero = zero_tangent(group)

    def trial(rng):
        v, w = sample_lie_tangent(group, rng), sample_lie_tangent(group, rng)
        commutator = commutator_second_tangent(group, v, w)
        parts = t2_decompose(group, commutator.rep)
        return {
            "p1": _gap(parts.p1, group.identity),
            "p2": tangent_deviation(parts.p2, zero, probes),
            "p3": tangent_deviation(parts.p3, zero, probes),
            "p4": _gap(xi_inverse(group, parts.p4).coords, xi_inverse(group, commutator).coords),
        }

    return run_trials("t2", group.name, trial, trials, tol, seed)


def verify_matrix_oracle(
    group: FrolicherGroupDescriptor, trials: int = 100, tol: float = 1e-9, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """
    Bracket coordinates against AB - BA computed in plain float arithmetic
    from the chart velocities of v and w.

    :raises InvalidParameter: If the group carries no matrix oracle.
    """
    if group.algebra is None:
        raise InvalidParameter(f"{group.name} has no matrix oracle")
    algebra = group.algebra

    def trial(rng):
        v, w = sample_lie_tangent(group, rng), sample_lie_tangent(group, rng)
        oracle = algebra.commutator(chart_consistency(v), chart_consistency(w))
        return {"oracle": _gap(bracket(group, v, w).coords, oracle)}

    return run_trials("oracle", group.name, trial, trials, tol, seed)


def _product_iso_suite(group, trials, tol, seed) -> VerificationReport:
    return verify_product_iso(group.space, circle(), trials, tol, seed)


def _rj_suite(group, trials, tol, seed) -> VerificationReport:
    if not group.name.startswith("r_power(") or "J_size" not in group.params:
        raise InvalidParameter(f"suite rj needs an r_power group, got {group.name}")
    return rj_isomorphism_check(
        group.params["J_size"], group.params.get("supports"), trials, tol, seed
    )


SUITES: Dict[str, Callable[..., VerificationReport]] = {
    "axioms": verify_lie_axioms,
    "comm": verify_comm_identity,
    "mixed": verify_mixed_partial_identity,
    "trivialization": verify_trivialization,
    "product-iso": _product_iso_suite,
    "functorial": verify_functoriality,
    "rj": _rj_suite,
    "saturation": verify_saturation,
    "xi-section": verify_xi_section,
    "t2": verify_t2_corollary,
    "oracle": verify_matrix_oracle,
}


def run_suite(
    name: str,
    group: FrolicherGroupDescriptor,
    trials: int = DEFAULT_TRIALS,
    tol: float = PIPELINE_TOL,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """
    Runs a named suite on a group.

    :raises InvalidParameter: For unknown suites or a suite that does not apply to the group.
    """
    if name not in SUITES:
        raise InvalidParameter(f"unknown suite '{name}'; known: {', '.join(SUITES)}")
    return SUITES[name](group, trials, tol, seed)
