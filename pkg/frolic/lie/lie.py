import numpy as np

from dataclasses import dataclass
from typing import Dict, List, Tuple

from frolic.errors import BasePointMismatch, ChartDomainError, DomainError, InvalidParameter
from frolic.group import (
    FrolicherGroupDescriptor,
    chart_line,
    left_translate,
    tangent_add,
)
from frolic.jet import lift, s_seed, t_seed, value
from frolic.log import get_logger
from frolic.smooth import (
    Curve,
    RealFunction,
    TwoParamMap,
    deriv_at_zero,
    mixed_partial_at_zero,
)
from frolic.tangent import SecondTangentVector, TangentVector

logger = get_logger(__name__)

STRUCTURE_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class LieVector:
    """Chart coordinates at the identity of an element of the Lie algebra."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).ravel()
        if not np.all(np.isfinite(coords)):
            raise DomainError(f"Lie vector with non-finite coordinates: {coords}")
        coords.flags.writeable = False
        object.__setattr__(self, "coords", coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieVector):
            return NotImplemented
        return bool(np.array_equal(self.coords, other.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def to_list(self) -> List[float]:
        return [float(x) for x in self.coords]


@dataclass(frozen=True, eq=False)
class TrivializedTangent:
    """(c(0), c(0)⁻¹[c]): a group element and a vector at the identity."""

    base: np.ndarray
    body: TangentVector


@dataclass(frozen=True, eq=False)
class T2Decomposition:
    p1: np.ndarray
    p2: TangentVector
    p3: TangentVector
    p4: SecondTangentVector


@dataclass(frozen=True, eq=False)
class StructureTable:
    """c[i, j] holds the coordinates of [e_i, e_j] for the chart basis lines e_i."""

    group: str
    dim: int
    c: np.ndarray

    def antisymmetry_deviation(self) -> float:
        diagonal = np.abs(np.einsum("iik->ik", self.c))
        skew = np.abs(self.c + np.transpose(self.c, (1, 0, 2)))
        return float(max(np.max(diagonal, initial=0.0), np.max(skew, initial=0.0)))

    def rows(self, floor: float = STRUCTURE_FLOOR) -> List[Tuple[int, int, int, float]]:
        """Non-negligible entries as (i, j, k, c_ij^k)."""
        return [
            (int(i), int(j), int(k), float(self.c[i, j, k]))
            for i, j, k in zip(*np.nonzero(np.abs(self.c) > floor))
        ]

    def to_dict(self) -> Dict:
        return {
            "group": self.group,
            "dim": self.dim,
            "constants": [[i, j, k, c] for i, j, k, c in self.rows()],
        }


def _at_identity(group: FrolicherGroupDescriptor, v: TangentVector) -> None:
    if v.space.name != group.space.name:
        raise InvalidParameter(f"vector on {v.space.name} is not tangent to {group.name}")
    if not group.space.points_equal(v.base, group.identity):
        raise BasePointMismatch(f"expected a vector at the identity of {group.name}, got base {v.base}")


def trivialize(group: FrolicherGroupDescriptor, v: TangentVector) -> TrivializedTangent:
    """Φ[c] = (g, [s -> g⁻¹ c(s)]) with g = c(0)."""
    g = v.base
    g_inv = np.asarray(value(group.inv(g)), dtype=float)
    c, mul = v.rep, group.mul
    body = Curve(group.space.name, lambda s: mul(g_inv, c(s)), f"g⁻¹·{c.name}")
    return TrivializedTangent(g, TangentVector(group.space, group.identity, body))


def untrivialize(group: FrolicherGroupDescriptor, t: TrivializedTangent) -> TangentVector:
    return left_translate(group, t.base, t.body)


def adjoint(group: FrolicherGroupDescriptor, h, v: TangentVector) -> TangentVector:
    """Ad(h)v = [s -> h c(s) h⁻¹]."""
    _at_identity(group, v)
    h = np.asarray(value(h), dtype=float)
    h_inv = np.asarray(value(group.inv(h)), dtype=float)
    c, mul = v.rep, group.mul
    rep = Curve(group.space.name, lambda s: mul(mul(h, c(s)), h_inv), f"Ad·{c.name}")
    return TangentVector(group.space, group.identity, rep)


def semidirect_mul(
    group: FrolicherGroupDescriptor, a: TrivializedTangent, b: TrivializedTangent
) -> TrivializedTangent:
    """(g, v)(h, w) = (gh, Ad(h⁻¹)v + w)."""
    h_inv = np.asarray(value(group.inv(b.base)), dtype=float)
    body = tangent_add(group, adjoint(group, h_inv, a.body), b.body)
    return TrivializedTangent(np.asarray(value(group.mul(a.base, b.base)), dtype=float), body)


def t2_decompose(group: FrolicherGroupDescriptor, gamma: TwoParamMap) -> T2Decomposition:
    """
    Splits the class of γ in T²G into (γ(0,0), π2, π3, π4) with
    π2 = [s -> g⁻¹γ(s,0)], π3 = [t -> g⁻¹γ(0,t)] and
    π4 = [(s,t) -> γ(0,t)⁻¹ g γ(s,0)⁻¹ γ(s,t)].
    """
    g = np.asarray(value(gamma(0.0, 0.0)), dtype=float)
    g_inv = np.asarray(value(group.inv(g)), dtype=float)
    mul, inv, name = group.mul, group.inv, group.space.name
    p2 = Curve(name, lambda s: mul(g_inv, gamma(s, 0.0)), "π2")
    p3 = Curve(name, lambda t: mul(g_inv, gamma(0.0, t)), "π3")
    p4 = TwoParamMap(
        name,
        lambda s, t: mul(mul(mul(inv(gamma(0.0, t)), g), inv(gamma(s, 0.0))), gamma(s, t)),
        "π4",
    )
    return T2Decomposition(
        p1=g,
        p2=TangentVector(group.space, group.identity, p2),
        p3=TangentVector(group.space, group.identity, p3),
        p4=SecondTangentVector(group.space, p4, group.identity),
    )


def xi(group: FrolicherGroupDescriptor, v: TangentVector) -> SecondTangentVector:
    """Ξ(v): the class of the line (s, t) -> c(st)."""
    _at_identity(group, v)
    c = v.rep
    return SecondTangentVector(
        group.space, TwoParamMap(group.space.name, lambda s, t: c(s * t), f"Ξ{c.name}"), group.identity
    )


def xi_inverse(group: FrolicherGroupDescriptor, xi_vector: SecondTangentVector) -> LieVector:
    """
    Ξ⁻¹ by chart mixed partials: coordinate k is ∂²(chart_k∘γ)/∂s∂t at 0.

    :raises ChartDomainError: If γ(0, 0) lies outside the chart at the identity.
    """
    chart = group.space.chart
    if not chart.contains(xi_vector.base):
        raise ChartDomainError(f"{xi_vector.base} lies outside the chart of {group.name}")
    coords = lift(chart.to_coords(xi_vector.rep(s_seed(), t_seed())))
    return LieVector(np.asarray(coords.dst, dtype=float))


def iota_first(group: FrolicherGroupDescriptor, v: TangentVector) -> SecondTangentVector:
    """v in T²G along the first parameter: (s, t) -> c(s)."""
    _at_identity(group, v)
    c = v.rep
    return SecondTangentVector(group.space, TwoParamMap(group.space.name, lambda s, t: c(s), "ι1"))


def iota_second(group: FrolicherGroupDescriptor, v: TangentVector) -> SecondTangentVector:
    """v in T²G along the second parameter: (s, t) -> c(t)."""
    _at_identity(group, v)
    c = v.rep
    return SecondTangentVector(group.space, TwoParamMap(group.space.name, lambda s, t: c(t), "ι2"))


def commutator_second_tangent(
    group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector
) -> SecondTangentVector:
    """The class of γ(s, t) = c(s) d(t) c(s)⁻¹ d(t)⁻¹."""
    first, second = iota_first(group, v).rep, iota_second(group, w).rep
    mul, inv = group.mul, group.inv

    def gamma(s, t):
        cs, dt = first(s, t), second(s, t)
        return mul(mul(mul(cs, dt), inv(cs)), inv(dt))

    return SecondTangentVector(group.space, TwoParamMap(group.space.name, gamma, "κ"))


def bracket(group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector) -> LieVector:
    """
    [v, w] = Ξ⁻¹ of the commutator curve.

    :raises BasePointMismatch: If v or w is not at the identity.
    :raises ChartDomainError: If the chart cannot be evaluated.
    """
    return xi_inverse(group, commutator_second_tangent(group, v, w))


def lie_vector_to_tangent(group: FrolicherGroupDescriptor, lv: LieVector) -> TangentVector:
    """The vector at the identity represented by t -> chart⁻¹(t·coords)."""
    if len(lv) != group.lie_dim:
        raise InvalidParameter(f"{group.name} has lie_dim {group.lie_dim}, got {len(lv)} coordinates")
    return TangentVector(group.space, group.identity, chart_line(group, lv.coords))


def coordinates_to_tangent(group: FrolicherGroupDescriptor, coords) -> TangentVector:
    return lie_vector_to_tangent(group, LieVector(coords))


def derivation_apply(group: FrolicherGroupDescriptor, v: TangentVector, f: RealFunction, g) -> float:
    """D_v f(g) = d/du f(g c(u)) at 0."""
    _at_identity(group, v)
    g = np.asarray(value(g), dtype=float)
    c, mul = v.rep, group.mul
    return deriv_at_zero(f, Curve(group.space.name, lambda u: mul(g, c(u)), "g·c"))


def derivation_second(
    group: FrolicherGroupDescriptor, v: TangentVector, w: TangentVector, f: RealFunction, g
) -> float:
    """D_v(D_w f)(g) = ∂²/∂s∂t f(g c(s) d(t)) at 0."""
    _at_identity(group, v)
    _at_identity(group, w)
    g = np.asarray(value(g), dtype=float)
    c, d, mul = v.rep, w.rep, group.mul
    return mixed_partial_at_zero(
        f, TwoParamMap(group.space.name, lambda s, t: mul(mul(g, c(s)), d(t)), "g·c·d")
    )


def structure_constants(group: FrolicherGroupDescriptor) -> StructureTable:
    """Brackets of all pairs of chart basis lines e_i = [t -> chart⁻¹(t δ_i)]."""
    dim = group.lie_dim
    lines = [coordinates_to_tangent(group, row) for row in np.eye(dim)]
    table = np.zeros((dim, dim, dim))
    for i in range(dim):
        for j in range(dim):
            table[i, j] = bracket(group, lines[i], lines[j]).coords
    logger.info(f"Computed {dim * dim} brackets for {group.name}")
    return StructureTable(group.name, dim, table)
