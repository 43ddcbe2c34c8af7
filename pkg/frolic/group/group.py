import numpy as np

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from frolic.errors import BasePointMismatch, InvalidParameter
from frolic.jet import s_seed, value
from frolic.log import get_logger
from frolic.smooth import Curve, ProbeReport
from frolic.space import SpaceDescriptor
from frolic.tangent import TangentVector, zero_vector

logger = get_logger(__name__)

DEFAULT_SAMPLE_SCALE = 0.3
AXIOM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MatrixAlgebra:
    """
    Matrix oracle for a group embedded in a matrix group.

    ``basis[i]`` is the matrix velocity of the chart line t -> chart⁻¹(t δ_i)
    at the identity. Everything here is plain float linear algebra.
    """

    basis: np.ndarray

    def __post_init__(self):
        basis = np.array(self.basis, dtype=float)
        if basis.ndim != 3 or basis.shape[1] != basis.shape[2]:
            raise InvalidParameter(f"basis must be a stack of square matrices, got {basis.shape}")
        basis.flags.writeable = False
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.basis.shape[1]

    def to_matrix(self, coords) -> np.ndarray:
        return np.tensordot(np.asarray(coords, dtype=float), self.basis, axes=1)

    def coordinates(self, matrix) -> np.ndarray:
        """Least-squares coordinates of a matrix in the basis."""
        design = self.basis.reshape(self.dim, -1).T
        coords, *_ = np.linalg.lstsq(design, np.asarray(matrix, dtype=float).ravel(), rcond=None)
        return coords

    def commutator(self, a, b) -> np.ndarray:
        """Coordinates of AB - BA for coordinate vectors a and b."""
        x, y = self.to_matrix(a), self.to_matrix(b)
        return self.coordinates(x @ y - y @ x)


@dataclass(frozen=True, eq=False)
class FrolicherGroupDescriptor:
    """
    A Frölicher group with scalar-generic multiplication and inversion.

    The space must carry a chart around the identity sending the identity
    to the zero vector; the chart realizes the inverse of Ξ.
    """

    name: str
    space: SpaceDescriptor = field(repr=False)
    mul: Callable[[Any, Any], Any] = field(repr=False)
    inv: Callable[[Any], Any] = field(repr=False)
    identity: np.ndarray = field(repr=False)
    lie_dim: int = 0
    algebra: Optional[MatrixAlgebra] = field(default=None, repr=False)
    params: Dict[str, Any] = field(default_factory=dict)
    coordinate_sampler: Optional[Callable[[np.random.Generator, float], np.ndarray]] = field(
        default=None, repr=False
    )
    sample_scale: float = DEFAULT_SAMPLE_SCALE

    def __post_init__(self):
        identity = np.array(self.identity, dtype=float)
        identity.flags.writeable = False
        object.__setattr__(self, "identity", identity)
        chart = self.space.chart
        if chart is None:
            raise InvalidParameter(f"group {self.name} needs a chart at the identity")
        if chart.dim != self.lie_dim:
            raise InvalidParameter(
                f"group {self.name}: chart dimension {chart.dim} differs from lie_dim {self.lie_dim}"
            )
        if not self.space.contains(identity):
            raise InvalidParameter(f"group {self.name}: identity is not a point of {self.space.name}")
        origin = np.asarray(value(chart.to_coords(identity)), dtype=float)
        if np.max(np.abs(origin), initial=0.0) > self.space.eq_tol:
            raise InvalidParameter(f"group {self.name}: chart does not send the identity to 0")
        if self.algebra is not None and self.algebra.dim != self.lie_dim:
            raise InvalidParameter(f"group {self.name}: oracle basis has the wrong dimension")

    def to_coords(self, point):
        return self.space.chart.to_coords(point)

    def from_coords(self, coords):
        return self.space.chart.from_coords(coords)

    def sample_coords(self, rng: np.random.Generator, scale: Optional[float] = None) -> np.ndarray:
        scale = self.sample_scale if scale is None else scale
        if self.coordinate_sampler is not None:
            return self.coordinate_sampler(rng, scale)
        return rng.normal(scale=scale, size=self.lie_dim)


def _same_base(group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector) -> None:
    if not group.space.points_equal(v.base, w.base):
        raise BasePointMismatch(f"vectors in {group.name} sit over {v.base} and {w.base}")


def _in_group(group: FrolicherGroupDescriptor, v: TangentVector) -> None:
    if v.space.name != group.space.name:
        raise InvalidParameter(f"vector on {v.space.name} is not tangent to {group.name}")


def tangent_add(group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector) -> TangentVector:
    """
    [c] + [d] = [s -> c(s) g⁻¹ d(s)] in T_gG.

    :raises BasePointMismatch: If v and w sit over different points.
    """
    _in_group(group, v)
    _in_group(group, w)
    _same_base(group, v, w)
    g_inv = np.asarray(value(group.inv(v.base)))
    c, d, mul = v.rep, w.rep, group.mul
    rep = Curve(group.space.name, lambda s: mul(mul(c(s), g_inv), d(s)), f"({c.name} + {d.name})")
    return TangentVector(group.space, v.base, rep)


def tangent_neg(group: FrolicherGroupDescriptor, v: TangentVector) -> TangentVector:
    """-[c] = [s -> g c(s)⁻¹ g] in T_gG."""
    _in_group(group, v)
    g, c, mul, inv = v.base, v.rep, group.mul, group.inv
    rep = Curve(group.space.name, lambda s: mul(mul(g, inv(c(s))), g), f"-{c.name}")
    return TangentVector(group.space, g, rep)


def tg_mul(group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector) -> TangentVector:
    """Multiplication in TG: [c][d] = [s -> c(s) d(s)], based at gh."""
    _in_group(group, v)
    _in_group(group, w)
    c, d, mul = v.rep, w.rep, group.mul
    rep = Curve(group.space.name, lambda s: mul(c(s), d(s)), f"{c.name}·{d.name}")
    return TangentVector(group.space, mul(v.base, w.base), rep)


def left_translate(group: FrolicherGroupDescriptor, g, v: TangentVector) -> TangentVector:
    """g[c] = [s -> g c(s)]."""
    _in_group(group, v)
    g = np.asarray(value(g), dtype=float)
    c, mul = v.rep, group.mul
    rep = Curve(group.space.name, lambda s: mul(g, c(s)), f"λ·{c.name}")
    return TangentVector(group.space, mul(g, v.base), rep)


def right_translate(group: FrolicherGroupDescriptor, v: TangentVector, g) -> TangentVector:
    """[c]g = [s -> c(s) g]."""
    _in_group(group, v)
    g = np.asarray(value(g), dtype=float)
    c, mul = v.rep, group.mul
    rep = Curve(group.space.name, lambda s: mul(c(s), g), f"{c.name}·ρ")
    return TangentVector(group.space, mul(v.base, g), rep)


def zero_tangent(group: FrolicherGroupDescriptor, g=None) -> TangentVector:
    return zero_vector(group.space, group.identity if g is None else g)


def sample_point(group: FrolicherGroupDescriptor, rng: np.random.Generator) -> np.ndarray:
    """A seeded random group element chart⁻¹(y)."""
    return np.asarray(value(group.from_coords(group.sample_coords(rng))), dtype=float)


def chart_line(group: FrolicherGroupDescriptor, coords, name: str = "chart-line") -> Curve:
    """The curve t -> chart⁻¹(t·coords)."""
    coords = np.asarray(coords, dtype=float)
    from_coords = group.from_coords
    return Curve(group.space.name, lambda t: from_coords(t * coords), name)


def sample_lie_tangent(group: FrolicherGroupDescriptor, rng: np.random.Generator) -> TangentVector:
    """
    A seeded random vector at the identity with representative
    u -> chart⁻¹(u a + u² b); the quadratic term makes the
    representative differ from the chart line.
    """
    a = group.sample_coords(rng)
    b = group.sample_coords(rng)
    from_coords = group.from_coords
    rep = Curve(group.space.name, lambda u: from_coords(u * a + (u * u) * b), "lie-sample")
    return TangentVector(group.space, group.identity, rep)


def sample_tangent_at(group: FrolicherGroupDescriptor, g, rng: np.random.Generator) -> TangentVector:
    return left_translate(group, g, sample_lie_tangent(group, rng))


def check_group_axioms(
    group: FrolicherGroupDescriptor, trials: int = 50, seed: int = 0, tol: float = AXIOM_TOL
) -> ProbeReport:
    """
    Samples the group laws: identity, inverses, associativity, and agreement
    of plain and jet evaluation of mul and inv.
    """
    report = ProbeReport(passed=True)
    e, mul, inv = group.identity, group.mul, group.inv

    def gap(a, b) -> float:
        return float(np.max(np.abs(np.asarray(value(a)) - np.asarray(value(b)))))

    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        g, h, k = (sample_point(group, rng) for _ in range(3))
        report.record(gap(mul(e, g), g), tol, f"e·g = g, trial {trial}")
        report.record(gap(mul(g, e), g), tol, f"g·e = g, trial {trial}")
        report.record(gap(mul(g, inv(g)), e), tol, f"g·g⁻¹ = e, trial {trial}")
        report.record(gap(mul(mul(g, h), k), mul(g, mul(h, k))), tol, f"associativity, trial {trial}")
        v = sample_lie_tangent(group, rng)
        lifted = v.rep(s_seed())
        report.record(gap(mul(lifted, h), mul(v.rep(0.0), h)), 0.0, f"jet value of mul, trial {trial}")
        report.record(gap(inv(lifted), inv(v.rep(0.0))), 0.0, f"jet value of inv, trial {trial}")
    logger.debug(f"Group axioms of {group.name}: worst {report.worst_deviation:.3e}")
    return report
