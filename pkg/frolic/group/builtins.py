import math
import numpy as np

from scipy.linalg import block_diag
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from frolic.errors import ChartDomainError, FrolicError, InvalidParameter
from frolic.group.group import FrolicherGroupDescriptor, MatrixAlgebra
from frolic.group.loop import loop_group
from frolic.jet import (
    atan2,
    concatenate,
    cos,
    horner,
    matrix_invert,
    ravel,
    reshape,
    sin,
    sqrt,
    stack,
    total,
    trace,
    value,
)
from frolic.log import get_logger
from frolic.smooth import Curve, RealFunction
from frolic.space import (
    Chart,
    SpaceDescriptor,
    coordinate_functions,
    euclidean,
    product,
    r_power as r_power_space,
)

logger = get_logger(__name__)

MAX_MATRIX_SIZE = 4
DET_FLOOR = 1e-12
MEMBER_TOL = 1e-9
# the so3 chart stops this far short of the cut locus at angle pi
SO3_CUT_MARGIN = 1e-6

# asin(y)/y, sin(x)/x and (1 - cos x)/x² as power series in y² and x²
_ASIN_RATIO = [math.comb(2 * k, k) / (4.0**k * (2 * k + 1)) for k in range(40)]
_SINC = [(-1.0) ** k / math.factorial(2 * k + 1) for k in range(20)]
_COSC = [(-1.0) ** k / math.factorial(2 * k + 2) for k in range(20)]


def _unit_matrices(n: int) -> np.ndarray:
    return np.eye(n * n).reshape(n * n, n, n)


def diagonal_algebra(n: int) -> MatrixAlgebra:
    """Oracle for abelian groups: commuting diagonal units."""
    basis = np.zeros((n, n, n))
    basis[np.arange(n), np.arange(n), np.arange(n)] = 1.0
    return MatrixAlgebra(basis)


def matrix_mul(n: int) -> Callable[[Any, Any], Any]:
    def mul(a, b):
        return ravel(reshape(a, (n, n)) @ reshape(b, (n, n)))

    return mul


def matrix_inv(n: int) -> Callable[[Any], Any]:
    def inv(a):
        return ravel(matrix_invert(reshape(a, (n, n))))

    return inv


def group_space(
    name: str,
    arity: int,
    membership: Callable[[np.ndarray], bool],
    chart: Chart,
    functions: Optional[Tuple[RealFunction, ...]] = None,
) -> SpaceDescriptor:
    """
    Space of a group: by default the ambient coordinates as functions and
    the bounded chart curves u -> chart⁻¹(½ sin(u) δ_i) as curves.
    """
    basis = np.eye(chart.dim)
    curves = tuple(
        Curve(name, lambda u, i=i: chart.from_coords(0.5 * sin(u) * basis[i]), f"e{i}")
        for i in range(chart.dim)
    )
    return SpaceDescriptor(
        name=name,
        point_arity=arity,
        membership=membership,
        gen_functions=functions if functions is not None else coordinate_functions(name, arity),
        gen_curves=curves,
        chart=chart,
    )


def _check_size(n: Any, upper: int = MAX_MATRIX_SIZE) -> int:
    if int(n) != n or not 1 <= n <= upper:
        raise InvalidParameter(f"matrix size must be an integer in 1..{upper}, got {n}")
    return int(n)


def gl(n: int) -> FrolicherGroupDescriptor:
    """GL(n) with the global chart A -> A - I."""
    n = _check_size(n)
    name = f"gl({n})"
    eye = np.eye(n).ravel()

    def membership(x):
        return abs(np.linalg.det(x.reshape(n, n))) > DET_FLOOR

    chart = Chart(n * n, lambda x: x - eye, lambda y: y + eye)
    return FrolicherGroupDescriptor(
        name=name,
        space=group_space(name, n * n, membership, chart),
        mul=matrix_mul(n),
        inv=matrix_inv(n),
        identity=eye,
        lie_dim=n * n,
        algebra=MatrixAlgebra(_unit_matrices(n)),
        params={"n": n},
        sample_scale=0.25 / n,
    )


def hat(y):
    """The skew matrix of (a, b, c), acting as the cross product with it."""
    zero = 0.0 * y[0]
    return stack(
        [
            stack([zero, -y[2], y[1]]),
            stack([y[2], zero, -y[0]]),
            stack([-y[1], y[0], zero]),
        ]
    )


def _so3_angle(rotation: np.ndarray) -> float:
    c = np.clip((np.trace(rotation) - 1.0) / 2.0, -1.0, 1.0)
    return float(np.arccos(c))


def _so3_in_chart(x: np.ndarray) -> bool:
    return _so3_angle(np.asarray(x, dtype=float).reshape(3, 3)) < math.pi - SO3_CUT_MARGIN


def so3_log(x):
    """
    Rotation vector of a rotation matrix (flattened), scalar-generic.

    With w the axial part of R and c = cos θ, the result is w θ / sin θ;
    near the identity θ / sin θ is summed as a series in sin²θ.

    :raises ChartDomainError: At or near the cut locus θ = π.
    """
    r = reshape(x, (3, 3))
    if not _so3_in_chart(value(x)):
        raise ChartDomainError(f"rotation angle reaches pi: {np.asarray(value(x))}")
    w = stack([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]) * 0.5
    s2 = total(w * w)
    c = (trace(r) - 1.0) * 0.5
    if value(s2) <= 0.25 and value(c) > 0:
        factor = horner(_ASIN_RATIO, s2)
    else:
        sin_theta = sqrt(s2)
        factor = atan2(sin_theta, c) / sin_theta
    return w * factor


def so3_exp(y):
    """Rodrigues' formula R = I + A K + B K², K = hat(y), scalar-generic."""
    theta2 = total(y * y)
    k = hat(y)
    rotation = np.eye(3) + horner(_SINC, theta2) * k + horner(_COSC, theta2) * (k @ k)
    return ravel(rotation)


def so3() -> FrolicherGroupDescriptor:
    name = "so3"

    def membership(x):
        r = x.reshape(3, 3)
        return np.max(np.abs(r.T @ r - np.eye(3))) <= MEMBER_TOL and np.linalg.det(r) > 0

    chart = Chart(3, so3_log, so3_exp, _so3_in_chart)
    return FrolicherGroupDescriptor(
        name=name,
        space=group_space(name, 9, membership, chart),
        mul=matrix_mul(3),
        inv=matrix_inv(3),
        identity=np.eye(3).ravel(),
        lie_dim=3,
        algebra=MatrixAlgebra([hat(row) for row in np.eye(3)]),
    )


def _sl2_from_coords(y):
    pivot = 1.0 + y[0]
    if not value(pivot) > 0:
        raise ChartDomainError(f"sl2 chart needs a > 0, got a = {value(pivot)}")
    return stack([pivot, y[1], y[2], (1.0 + y[1] * y[2]) / pivot])


def sl2() -> FrolicherGroupDescriptor:
    """SL(2) with chart (a - 1, b, c); d is solved from det = 1."""
    name = "sl2"

    def membership(x):
        return abs(x[0] * x[3] - x[1] * x[2] - 1.0) <= MEMBER_TOL

    chart = Chart(
        3,
        lambda x: stack([x[0] - 1.0, x[1], x[2]]),
        _sl2_from_coords,
        lambda x: x[0] > 0,
    )
    return FrolicherGroupDescriptor(
        name=name,
        space=group_space(name, 4, membership, chart),
        mul=matrix_mul(2),
        inv=matrix_inv(2),
        identity=np.eye(2).ravel(),
        lie_dim=3,
        algebra=MatrixAlgebra(
            [np.diag([1.0, -1.0]), [[0.0, 1.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
        ),
        sample_scale=0.2,
    )


def heisenberg3() -> FrolicherGroupDescriptor:
    """Upper unitriangular 3x3 matrices with chart (a12, a23, a13)."""
    name = "heisenberg3"

    def membership(x):
        r = x.reshape(3, 3)
        return np.max(np.abs(np.tril(r, -1))) <= MEMBER_TOL and np.max(
            np.abs(np.diag(r) - 1.0)
        ) <= MEMBER_TOL

    def from_coords(y):
        zero = 0.0 * y[0]
        one = zero + 1.0
        return stack([one, y[0], y[2], zero, one, y[1], zero, zero, one])

    chart = Chart(3, lambda x: stack([x[1], x[5], x[2]]), from_coords)
    units = _unit_matrices(3)
    return FrolicherGroupDescriptor(
        name=name,
        space=group_space(name, 9, membership, chart),
        mul=matrix_mul(3),
        inv=matrix_inv(3),
        identity=np.eye(3).ravel(),
        lie_dim=3,
        algebra=MatrixAlgebra([units[1], units[5], units[2]]),
    )


def _vector_group(
    name: str, space: SpaceDescriptor, n: int, params: Dict[str, Any]
) -> FrolicherGroupDescriptor:
    return FrolicherGroupDescriptor(
        name=name,
        space=space,
        mul=lambda a, b: a + b,
        inv=lambda a: -a,
        identity=np.zeros(n),
        lie_dim=n,
        algebra=diagonal_algebra(n),
        params=params,
    )


def additive(n: int) -> FrolicherGroupDescriptor:
    if int(n) != n or n < 1:
        raise InvalidParameter(f"additive needs n >= 1, got {n}")
    n = int(n)
    return _vector_group(f"additive({n})", euclidean(n), n, {"n": n})


def r_power(
    J_size: int = 100, supports: Optional[Sequence[Sequence[int]]] = None
) -> FrolicherGroupDescriptor:
    """(R^J, +) on the finite-support structure of r_power."""
    space = r_power_space(J_size, supports)
    params = {"J_size": space.point_arity}
    if supports is not None:
        params["supports"] = [list(s) for s in supports]
    return _vector_group(f"r_power({space.point_arity})", space, space.point_arity, params)


TWO_PI = 2.0 * math.pi


def wrap(x):
    """Angles reduced to [-pi, pi] by a shift fixed from the value part."""
    return x - TWO_PI * np.round(np.asarray(value(x)) / TWO_PI)


def torus2() -> FrolicherGroupDescriptor:
    name = "torus2"
    functions = tuple(
        RealFunction(name, lambda x, i=i, fn=fn: fn(x[i]), f"{label}{i + 1}")
        for i in range(2)
        for fn, label in ((cos, "cos θ"), (sin, "sin θ"))
    )
    chart = Chart(2, lambda x: x, lambda y: wrap(y), lambda x: bool(np.all(np.abs(x) < math.pi)))
    space = group_space(
        name, 2, lambda x: bool(np.all(np.abs(x) <= math.pi + MEMBER_TOL)), chart, functions
    )
    return FrolicherGroupDescriptor(
        name=name,
        space=space,
        mul=lambda a, b: wrap(a + b),
        inv=lambda a: wrap(-a),
        identity=np.zeros(2),
        lie_dim=2,
        algebra=diagonal_algebra(2),
    )


def product_group(g: FrolicherGroupDescriptor, h: FrolicherGroupDescriptor) -> FrolicherGroupDescriptor:
    """G x H with componentwise operations and the concatenated chart."""
    n = g.space.point_arity
    algebra = None
    if g.algebra is not None and h.algebra is not None:
        zg, zh = np.zeros((g.algebra.size,) * 2), np.zeros((h.algebra.size,) * 2)
        algebra = MatrixAlgebra(
            [block_diag(b, zh) for b in g.algebra.basis] + [block_diag(zg, b) for b in h.algebra.basis]
        )

    def mul(a, b):
        return concatenate([g.mul(a[:n], b[:n]), h.mul(a[n:], b[n:])])

    def inv(a):
        return concatenate([g.inv(a[:n]), h.inv(a[n:])])

    def sampler(rng, scale):
        return np.concatenate([g.sample_coords(rng), h.sample_coords(rng)])

    return FrolicherGroupDescriptor(
        name=f"{g.name}×{h.name}",
        space=product(g.space, h.space),
        mul=mul,
        inv=inv,
        identity=np.concatenate([g.identity, h.identity]),
        lie_dim=g.lie_dim + h.lie_dim,
        algebra=algebra,
        params={"factors": [g.name, h.name]},
        coordinate_sampler=sampler,
    )


def _product_from_specs(factors: Sequence[Any]) -> FrolicherGroupDescriptor:
    if not isinstance(factors, (list, tuple)) or len(factors) < 2:
        raise InvalidParameter("product needs a list of at least two factor specs")
    groups = [group_from_spec(spec) for spec in factors]
    result = groups[0]
    for other in groups[1:]:
        result = product_group(result, other)
    return result


def _loop(
    modes: int = 1, target: Any = "so3", chart_degree: Optional[int] = None
) -> FrolicherGroupDescriptor:
    return loop_group(modes, group_from_spec(target), chart_degree)


# name -> (factory, accepted parameters, lie dimension)
_GROUPS: Dict[str, Tuple[Callable[..., FrolicherGroupDescriptor], Tuple[str, ...], str]] = {
    "gl": (gl, ("n",), "n*n"),
    "so3": (so3, (), "3"),
    "sl2": (sl2, (), "3"),
    "heisenberg3": (heisenberg3, (), "3"),
    "additive": (additive, ("n",), "n"),
    "torus2": (torus2, (), "2"),
    "r_power": (r_power, ("J_size", "supports"), "J_size"),
    "loop_group": (
        _loop,
        ("modes", "target", "chart_degree"),
        "8*(modes+1)*dim(target), or (2*chart_degree+1)*dim(target)",
    ),
    "product": (_product_from_specs, ("factors",), "sum of factors"),
}

_REQUIRED = {"gl": ("n",), "additive": ("n",), "product": ("factors",)}


def group_names() -> Dict[str, Dict[str, Any]]:
    return {
        name: {"params": list(params), "lie_dim": dim}
        for name, (_, params, dim) in _GROUPS.items()
    }


def builtin_group(name: str, **params: Any) -> FrolicherGroupDescriptor:
    """
    Builds a registered group by name.

    :raises InvalidParameter: For unknown names, unknown or missing parameters.
    """
    if name not in _GROUPS:
        raise InvalidParameter(f"unknown group '{name}'; known: {', '.join(_GROUPS)}")
    factory, accepted, _ = _GROUPS[name]
    unknown = set(params) - set(accepted)
    if unknown:
        raise InvalidParameter(f"group '{name}' does not take {sorted(unknown)}")
    missing = set(_REQUIRED.get(name, ())) - set(params)
    if missing:
        raise InvalidParameter(f"group '{name}' needs {sorted(missing)}")
    logger.debug(f"Building group {name} with {params}")
    try:
        return factory(**params)
    except FrolicError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidParameter(f"bad parameters for group '{name}': {e}") from e


def group_from_spec(spec: Any) -> FrolicherGroupDescriptor:
    """Builds a group from a name or a mapping {"group": name, ...params}."""
    if isinstance(spec, str):
        return builtin_group(spec)
    if isinstance(spec, dict) and "group" in spec:
        params = {k: v for k, v in spec.items() if k != "group"}
        return builtin_group(spec["group"], **params)
    if isinstance(spec, dict) and "kind" in spec:
        return builtin_group(spec["kind"], **spec.get("params", {}))
    raise InvalidParameter(f"not a group spec: {spec!r}")
