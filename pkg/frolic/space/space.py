import numpy as np

from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

from frolic.errors import CurveEscapesSubset, DomainError, InvalidParameter
from frolic.jet import concatenate, cos, exp, sin, stack, value
from frolic.log import get_logger
from frolic.smooth import (
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    Curve,
    ProbeReport,
    RealFunction,
    SmoothMap,
    smoothness_probe,
    surface_deviations,
)

logger = get_logger(__name__)

DEFAULT_EQ_TOL = 1e-9
DEFAULT_PROBE_COUNT = 20
SUBSET_SAMPLES = tuple(np.linspace(-2.0, 2.0, 41))


def _always(point: np.ndarray) -> bool:
    return True


@dataclass(frozen=True)
class Chart:
    """
    Local coordinates on a neighbourhood of a space.

    Both maps are scalar-generic; ``contains`` decides on plain ambient
    coordinates whether a point lies in the chart domain.
    """

    dim: int
    to_coords: Callable[[Any], Any] = field(repr=False)
    from_coords: Callable[[Any], Any] = field(repr=False)
    contains: Callable[[np.ndarray], bool] = field(default=_always, repr=False)


@dataclass(frozen=True)
class SpaceDescriptor:
    """
    A Frölicher space at probe scale: ambient coordinates, a membership
    predicate and finite generating families of functions and curves.
    """

    name: str
    point_arity: int
    membership: Callable[[np.ndarray], bool] = field(repr=False)
    gen_functions: Tuple[RealFunction, ...] = field(default=(), repr=False)
    gen_curves: Tuple[Curve, ...] = field(default=(), repr=False)
    chart: Optional[Chart] = field(default=None, repr=False)
    eq_tol: float = DEFAULT_EQ_TOL
    factors: Tuple["SpaceDescriptor", ...] = field(default=(), repr=False)

    def contains(self, point) -> bool:
        point = np.asarray(value(point), dtype=float)
        if point.shape != (self.point_arity,) or not np.all(np.isfinite(point)):
            return False
        return bool(self.membership(point))

    def points_equal(self, a, b) -> bool:
        a = np.asarray(value(a), dtype=float)
        b = np.asarray(value(b), dtype=float)
        return a.shape == b.shape and bool(np.all(np.abs(a - b) <= self.eq_tol))

    @property
    def is_product(self) -> bool:
        return len(self.factors) == 2


@dataclass(frozen=True)
class FiniteSupportFunction(RealFunction):
    """
    A function that reads only the coordinates listed in ``support`` and
    hands them, in that order, to ``core``.
    """

    support: Tuple[int, ...] = ()
    core: Optional[Callable[[Any], Any]] = field(default=None, repr=False)

    @classmethod
    def build(
        cls, source: str, support: Sequence[int], core: Callable[[Any], Any], name: str
    ) -> "FiniteSupportFunction":
        support = tuple(int(j) for j in support)

        def program(point):
            return core(stack([point[j] for j in support]))

        return cls(source=source, program=program, name=name, support=support, core=core)


def projection(space: SpaceDescriptor, index: int) -> SmoothMap:
    """The projection of a product space onto factor 0 or 1."""
    left, right = space.factors
    if index == 0:
        return SmoothMap(space.name, left.name, lambda x: x[: left.point_arity], "π1")
    return SmoothMap(space.name, right.name, lambda x: x[left.point_arity :], "π2")


def _pair_curve(name: str, a: Curve, b: Curve) -> Curve:
    return Curve(name, lambda u: concatenate([a(u), b(u)]), f"({a.name}, {b.name})")


def _product_chart(a: SpaceDescriptor, b: SpaceDescriptor) -> Optional[Chart]:
    if a.chart is None or b.chart is None:
        return None
    na, da = a.point_arity, a.chart.dim

    def to_coords(x):
        return concatenate([a.chart.to_coords(x[:na]), b.chart.to_coords(x[na:])])

    def from_coords(y):
        return concatenate([a.chart.from_coords(y[:da]), b.chart.from_coords(y[da:])])

    def contains(x):
        return a.chart.contains(x[:na]) and b.chart.contains(x[na:])

    return Chart(da + b.chart.dim, to_coords, from_coords, contains)


def product(a: SpaceDescriptor, b: SpaceDescriptor) -> SpaceDescriptor:
    """
    The product structure on a x b.

    Functions are the factors' generators pulled back along the projections,
    so their count is the sum of the factors' counts: the circle contributes
    both x and y, and euclidean(2) x circle has 2 + 2 = 4 of them rather than
    one per chart coordinate. Curves are all pairs of factor generators.
    """
    name = f"{a.name}×{b.name}"
    na = a.point_arity

    def membership(x):
        return a.contains(x[:na]) and b.contains(x[na:])

    shell = SpaceDescriptor(name, na + b.point_arity, membership, factors=(a, b))
    functions = tuple(f.precompose(projection(shell, 0)) for f in a.gen_functions) + tuple(
        f.precompose(projection(shell, 1)) for f in b.gen_functions
    )
    curves = tuple(_pair_curve(name, ca, cb) for ca in a.gen_curves for cb in b.gen_curves)
    return SpaceDescriptor(
        name=name,
        point_arity=shell.point_arity,
        membership=membership,
        gen_functions=functions,
        gen_curves=curves,
        chart=_product_chart(a, b),
        eq_tol=max(a.eq_tol, b.eq_tol),
        factors=(a, b),
    )


def subset(
    parent: SpaceDescriptor,
    member: Callable[[np.ndarray], bool],
    curves_into: Sequence[Curve],
    name: Optional[str] = None,
    chart: Optional[Chart] = None,
    samples: Sequence[float] = SUBSET_SAMPLES,
) -> SpaceDescriptor:
    """
    The subset structure on {x in parent : member(x)}.

    Functions are the parent's generators restricted; curves are the given
    family, each checked against membership at the sample parameters.

    :raises CurveEscapesSubset: If a given curve leaves the subset.
    """
    name = name or f"{parent.name}|subset"

    def membership(x):
        return parent.contains(x) and bool(member(x))

    for c in curves_into:
        for u in samples:
            point = np.asarray(value(c(float(u))), dtype=float)
            if point.shape != (parent.point_arity,) or not membership(point):
                raise CurveEscapesSubset(
                    f"curve {c.name} leaves {name} at parameter {float(u):g}: {point}"
                )

    return SpaceDescriptor(
        name=name,
        point_arity=parent.point_arity,
        membership=membership,
        gen_functions=tuple(RealFunction(name, f.program, f.name) for f in parent.gen_functions),
        gen_curves=tuple(Curve(name, c.program, c.name) for c in curves_into),
        chart=chart,
        eq_tol=parent.eq_tol,
    )


def saturation_probe(
    space: SpaceDescriptor,
    samples: Sequence[float] = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """Runs smoothness_probe on every generator pair (f, c)."""
    report = ProbeReport(passed=True)
    for f in space.gen_functions:
        for c in space.gen_curves:
            report.absorb(smoothness_probe(f, c, samples, tol))
    logger.debug(
        f"Saturation probe on {space.name}: {report.checks} checks, worst {report.worst_deviation:.3e}"
    )
    return report


def check_descriptor(
    space: SpaceDescriptor,
    samples: Sequence[float] = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """
    Checks that generator curves land in the space, that generator pairs
    pass the saturation probe, and that the chart round-trips on the
    sampled curve points inside its domain.
    """
    report = ProbeReport(passed=True)
    for c in space.gen_curves:
        for u in samples:
            point = value(c(float(u)))
            if not space.contains(point):
                report.fail(f"curve {c.name} leaves {space.name} at {float(u):g}")
                continue
            report.checks += 1
            if space.chart is None or not space.chart.contains(np.asarray(point)):
                continue
            try:
                back = space.chart.from_coords(space.chart.to_coords(np.asarray(point)))
            except DomainError as e:
                report.fail(f"chart of {space.name} failed at {point}: {e}")
                continue
            deviation = float(np.max(np.abs(np.asarray(back) - point)))
            report.record(deviation, space.eq_tol, f"chart round trip at {point}")
    return report.absorb(saturation_probe(space, samples, tol))


def probe_functions(
    space: SpaceDescriptor, count: int = DEFAULT_PROBE_COUNT, seed: int = 0
) -> List[RealFunction]:
    """
    The generating functions of ``space`` followed by ``count`` seeded
    random algebraic combinations of them.
    """
    generators = list(space.gen_functions)
    if not generators:
        return []
    rng = np.random.default_rng(seed)
    probes = list(generators)
    for k in range(count):
        f = generators[rng.integers(len(generators))]
        g = generators[rng.integers(len(generators))]
        a, b = rng.uniform(-1.0, 1.0, size=2)
        kind = k % 4
        if kind == 0:
            probes.append((f * g).scale(a))
        elif kind == 1:
            probes.append((f.scale(a) + g.scale(b)).then(sin, "sin"))
        elif kind == 2:
            probes.append(f.then(lambda y: exp(0.5 * sin(y)), "exp½sin") * g)
        else:
            probes.append(f.scale(a).then(cos, "cos") * (g + b))
    return probes


def mapping_curve_probe(
    family: Callable[[Any, Any], Any],
    source: SpaceDescriptor,
    target: SpaceDescriptor,
    s_samples: Sequence[float] = (-0.3, 0.0, 0.3),
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """
    Tests whether s -> phi_s is a curve of maps source -> target, where
    ``family(s, x)`` evaluates phi_s(x).

    The family qualifies when (s, t) -> f(phi_s(c(t))) is smooth for every
    generator curve c of the source and generator function f of the target;
    smoothness is checked through first and mixed partials on the sample grid.
    """
    report = ProbeReport(passed=True)
    for c in source.gen_curves:
        for f in target.gen_functions:

            def h(s, t, c=c, f=f):
                return f(family(s, c(t)))

            for s0 in s_samples:
                for t0 in s_samples:
                    where = f"{f.name}∘φ∘{c.name} at ({s0:g}, {t0:g})"
                    try:
                        deviations = surface_deviations(h, float(s0), float(t0))
                    except DomainError as e:
                        report.fail(f"{where}: {e}")
                        continue
                    report.record(max(deviations), tol, where)
    return report
