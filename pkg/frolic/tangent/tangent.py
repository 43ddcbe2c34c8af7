import numpy as np

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from frolic.errors import (
    BasePointMismatch,
    ChartDomainError,
    DomainError,
    InvalidParameter,
    NotAProductSpace,
)
from frolic.jet import concatenate, lift, s_seed, t_seed, value
from frolic.log import get_logger
from frolic.smooth import (
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    FD_STEP,
    Curve,
    ProbeReport,
    RealFunction,
    SmoothMap,
    TwoParamMap,
    deriv_at_zero,
    smoothness_probe,
)
from frolic.space import SpaceDescriptor, probe_functions, projection

logger = get_logger(__name__)

TANGENT_TOL = 1e-9
MEMBERSHIP_SAMPLES = (-0.1, 0.1)


def _plain_point(point) -> np.ndarray:
    point = np.array(value(point), dtype=float)
    point.flags.writeable = False
    return point


@dataclass(frozen=True, eq=False)
class TangentVector:
    """
    A tangent vector [c] at ``base``, held as one representative curve.

    Two vectors are equal when their pairings with the probe functions
    agree; see tangent_equal.
    """

    space: SpaceDescriptor = field(repr=False)
    base: np.ndarray
    rep: Curve

    def __post_init__(self):
        object.__setattr__(self, "base", _plain_point(self.base))
        if self.rep.target != self.space.name:
            raise InvalidParameter(
                f"representative {self.rep.name} targets {self.rep.target}, not {self.space.name}"
            )
        if not self.space.points_equal(self.rep(0.0), self.base):
            raise InvalidParameter(
                f"representative {self.rep.name} does not pass through the base point {self.base}"
            )
        for u in (0.0,) + MEMBERSHIP_SAMPLES:
            if not self.space.contains(self.rep(u)):
                raise InvalidParameter(
                    f"representative {self.rep.name} leaves {self.space.name} at {u:g}"
                )


@dataclass(frozen=True, eq=False)
class SecondTangentVector:
    """An element of T²X held as a two-parameter representative."""

    space: SpaceDescriptor = field(repr=False)
    rep: TwoParamMap
    base: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.rep.target != self.space.name:
            raise InvalidParameter(
                f"representative {self.rep.name} targets {self.rep.target}, not {self.space.name}"
            )
        origin = _plain_point(self.rep(0.0, 0.0))
        if self.base is None:
            object.__setattr__(self, "base", origin)
            return
        object.__setattr__(self, "base", _plain_point(self.base))
        if not self.space.points_equal(origin, self.base):
            raise InvalidParameter(f"representative {self.rep.name} does not start at {self.base}")


def pairing(v: TangentVector, f: RealFunction) -> float:
    """b([c], [f]) = (f∘c)'(0)."""
    return deriv_at_zero(f, v.rep)


def _same_fibre(v: TangentVector, w: TangentVector) -> None:
    if v.space.name != w.space.name:
        raise BasePointMismatch(f"vectors live on {v.space.name} and {w.space.name}")
    if not v.space.points_equal(v.base, w.base):
        raise BasePointMismatch(f"vectors sit over {v.base} and {w.base}")


def tangent_deviation(
    v: TangentVector, w: TangentVector, probes: Optional[Sequence[RealFunction]] = None
) -> float:
    """
    Largest difference of pairings of v and w over the probe functions.

    :param probes: Defaults to the space's generators plus the seeded random combinations.
    :raises BasePointMismatch: If the vectors sit over different points.
    """
    _same_fibre(v, w)
    if probes is None:
        probes = probe_functions(v.space)
    # one jet evaluation per representative, shared by all probes
    pv, pw = v.rep(s_seed()), w.rep(s_seed())
    worst = 0.0
    for f in probes:
        worst = max(worst, abs(float(lift(f(pv)).ds) - float(lift(f(pw)).ds)))
    return worst


def tangent_equal(
    v: TangentVector,
    w: TangentVector,
    probes: Optional[Sequence[RealFunction]] = None,
    tol: float = TANGENT_TOL,
) -> bool:
    return tangent_deviation(v, w, probes) <= tol


def scalar_mul(s: float, v: TangentVector) -> TangentVector:
    """s[c] = [u -> c(s u)]."""
    s = float(s)
    return TangentVector(
        v.space, v.base, v.rep.reparametrize(lambda u: s * u, f"{v.rep.name}({s:g}·)")
    )


def zero_vector(space: SpaceDescriptor, base) -> TangentVector:
    """The class of the constant curve at ``base``."""
    base = _plain_point(base)
    return TangentVector(space, base, Curve(space.name, lambda u: base + 0.0 * u, "const"))


def tangent_map(phi: SmoothMap, v: TangentVector, target: SpaceDescriptor) -> TangentVector:
    """
    Tφ[c] = [φ∘c].

    :param target: Descriptor of phi's target space.
    """
    if phi.source != v.space.name or phi.target != target.name:
        raise InvalidParameter(
            f"{phi.name} maps {phi.source} -> {phi.target}, not {v.space.name} -> {target.name}"
        )
    return TangentVector(target, phi(v.base), v.rep.then(phi))


def second_tangent_map(
    phi: SmoothMap, xi: SecondTangentVector, target: SpaceDescriptor
) -> SecondTangentVector:
    """T²φ(ξ), represented by φ∘γ."""
    if phi.source != xi.space.name or phi.target != target.name:
        raise InvalidParameter(
            f"{phi.name} maps {phi.source} -> {phi.target}, not {xi.space.name} -> {target.name}"
        )
    return SecondTangentVector(target, xi.rep.then(phi))


def product_split(v: TangentVector) -> Tuple[TangentVector, TangentVector]:
    """(Tπ1 v, Tπ2 v) for a vector on a product space."""
    if not v.space.is_product:
        raise NotAProductSpace(f"{v.space.name} is not a product space")
    left, right = v.space.factors
    return (
        tangent_map(projection(v.space, 0), v, left),
        tangent_map(projection(v.space, 1), v, right),
    )


def product_join(space: SpaceDescriptor, a: TangentVector, b: TangentVector) -> TangentVector:
    """[s -> (c(s), d(s))] on the product ``space``."""
    if not space.is_product:
        raise NotAProductSpace(f"{space.name} is not a product space")
    left, right = space.factors
    if a.space.name != left.name or b.space.name != right.name:
        raise NotAProductSpace(
            f"{space.name} is not the product of {a.space.name} and {b.space.name}"
        )
    rep = Curve(space.name, lambda u: concatenate([a.rep(u), b.rep(u)]), f"({a.rep.name}, {b.rep.name})")
    return TangentVector(space, np.concatenate([a.base, b.base]), rep)


def tx_curve_check(
    g: TwoParamMap,
    space: SpaceDescriptor,
    s_samples: Sequence[float] = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """
    Checks that g represents a curve s -> [t -> g(s, t)] into TX.

    Failures are prefixed with the violated condition: (i) t -> g(s, t) is
    smooth at each sampled s, (ii) s -> g(s, 0) is smooth, (iii) for every
    generator f, s -> ∂t(f∘g)(s, 0) is smooth.
    """
    report = ProbeReport(passed=True)
    for f in space.gen_functions:
        for s0 in s_samples:
            probe = smoothness_probe(f, g.at_s(float(s0)), s_samples, tol)
            probe.failures = [f"(i) {failure}" for failure in probe.failures]
            report.absorb(probe)
        probe = smoothness_probe(f, g.at_t(0.0), s_samples, tol)
        probe.failures = [f"(ii) {failure}" for failure in probe.failures]
        report.absorb(probe)
        for s0 in s_samples:
            where = f"(iii) ∂t({f.name}∘{g.name}) at s = {float(s0):g}"
            try:
                jet = lift(f(g(s_seed(float(s0)), t_seed())))
                ahead = lift(f(g(float(s0) + FD_STEP, t_seed()))).dt
                behind = lift(f(g(float(s0) - FD_STEP, t_seed()))).dt
            except DomainError as e:
                report.fail(f"{where}: {e}")
                continue
            fd = (float(ahead) - float(behind)) / (2.0 * FD_STEP)
            report.record(abs(float(jet.dst) - fd) / max(1.0, abs(float(jet.dst))), tol, where)
    return report


def chart_consistency(v: TangentVector) -> np.ndarray:
    """
    The classical coordinate velocity d/du (chart∘c)(0).

    :raises ChartDomainError: If the space has no chart or the base lies outside it.
    """
    chart = v.space.chart
    if chart is None:
        raise ChartDomainError(f"{v.space.name} declares no chart")
    if not chart.contains(v.base):
        raise ChartDomainError(f"{v.base} lies outside the chart of {v.space.name}")
    return np.array(lift(chart.to_coords(v.rep(s_seed()))).ds, dtype=float)


def sample_tangent(space: SpaceDescriptor, rng: np.random.Generator, scale: float = 0.3) -> TangentVector:
    """
    A seeded random tangent vector.

    With a chart the representative is u -> chart⁻¹(y + u a + u² b) for
    random y, a, b; products pair up samples of their factors; otherwise a
    random generator curve is rescaled.
    """
    if space.chart is not None:
        dim = space.chart.dim
        y, a, b = (rng.normal(scale=scale, size=dim) for _ in range(3))
        from_coords = space.chart.from_coords
        rep = Curve(space.name, lambda u: from_coords(y + u * a + (u * u) * b), "chart-curve")
        return TangentVector(space, value(rep(0.0)), rep)
    if space.is_product:
        left, right = space.factors
        return product_join(space, sample_tangent(left, rng, scale), sample_tangent(right, rng, scale))
    if not space.gen_curves:
        raise InvalidParameter(f"{space.name} has neither a chart nor generator curves")
    c = space.gen_curves[rng.integers(len(space.gen_curves))]
    k = float(rng.uniform(-2.0, 2.0))
    rep = c.reparametrize(lambda u: k * u, f"{c.name}({k:.3f}·)")
    return TangentVector(space, value(rep(0.0)), rep)


def generators_with_pairing(
    space: SpaceDescriptor,
    base,
    functions: Sequence[RealFunction],
    target: Sequence[float],
    tol: float = TANGENT_TOL,
) -> List[Curve]:
    """
    Generator curves through ``base`` whose pairings with ``functions``
    equal ``target``; an empty result witnesses that no declared curve
    realizes that velocity.
    """
    matches = []
    for c in space.gen_curves:
        if not space.points_equal(c(0.0), base):
            continue
        velocity = np.array([deriv_at_zero(f, c) for f in functions])
        if np.all(np.abs(velocity - np.asarray(target, dtype=float)) <= tol):
            matches.append(c)
    logger.debug(f"{len(matches)} generator curves of {space.name} pair to {list(target)}")
    return matches
