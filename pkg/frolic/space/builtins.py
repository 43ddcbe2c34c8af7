import numpy as np

from typing import Any, Dict, Optional, Sequence, Tuple

from frolic.errors import FrolicError, InvalidParameter
from frolic.jet import atan2, cos, exp, sin, stack, total, value
from frolic.log import get_logger
from frolic.smooth import Curve, RealFunction
from frolic.space.space import (
    DEFAULT_EQ_TOL,
    Chart,
    FiniteSupportFunction,
    SpaceDescriptor,
    subset,
)

logger = get_logger(__name__)

DEFAULT_J_SIZE = 100
MAX_SUPPORT = 5
DEFAULT_SUPPORT_COUNT = 20


def coordinate_functions(name: str, n: int) -> Tuple[RealFunction, ...]:
    return tuple(RealFunction(name, lambda x, i=i: x[i], f"x{i + 1}") for i in range(n))


def identity_chart(n: int) -> Chart:
    return Chart(n, lambda x: x, lambda y: y)


def euclidean(n: int) -> SpaceDescriptor:
    if int(n) != n or n < 1:
        raise InvalidParameter(f"euclidean needs n >= 1, got {n}")
    n = int(n)
    name = f"euclidean({n})"
    basis = np.eye(n)
    curves = tuple(
        Curve(name, lambda u, i=i: u * basis[i], f"line{i + 1}") for i in range(n)
    )
    return SpaceDescriptor(
        name=name,
        point_arity=n,
        membership=lambda x: True,
        gen_functions=coordinate_functions(name, n),
        gen_curves=curves,
        chart=identity_chart(n),
    )


def _on_circle(x: np.ndarray) -> bool:
    return abs(x[0] * x[0] + x[1] * x[1] - 1.0) <= DEFAULT_EQ_TOL


def _off_antipode(x: np.ndarray) -> bool:
    # the angle chart is centred at (1, 0); its cut is the ray through (-1, 0)
    return not (x[0] < 0.0 and abs(x[1]) <= DEFAULT_EQ_TOL)


def angle_chart() -> Chart:
    return Chart(
        1,
        lambda x: stack([atan2(x[1], x[0])]),
        lambda y: stack([cos(y[0]), sin(y[0])]),
        _off_antipode,
    )


def circle() -> SpaceDescriptor:
    """The unit circle in R^2, generated by both coordinate functions x and y."""
    name = "circle"
    return SpaceDescriptor(
        name=name,
        point_arity=2,
        membership=_on_circle,
        gen_functions=(
            RealFunction(name, lambda x: x[0], "x"),
            RealFunction(name, lambda x: x[1], "y"),
        ),
        gen_curves=(Curve(name, lambda t: stack([cos(t), sin(t)]), "rotation"),),
        chart=angle_chart(),
    )


def flat(t):
    """exp(-1/t) for t > 0 and 0 otherwise; flat to all orders at 0."""
    if value(t) > 0:
        return exp(-1.0 / t)
    return 0.0 * t


def coordinate_cross() -> SpaceDescriptor:
    """
    The axes {xy = 0} in the plane with the subset structure.

    Besides the axis lines the curve family holds a flat switch that runs
    in along one axis and out along the other; every generator has a
    velocity on one axis only.
    """
    curves = [
        Curve("plane", lambda t: stack([t, 0.0 * t]), "x-axis"),
        Curve("plane", lambda t: stack([0.0 * t, t]), "y-axis"),
        Curve("plane", lambda t: stack([flat(t), flat(-t)]), "switch"),
    ]
    return subset(
        euclidean(2),
        lambda x: x[0] * x[1] == 0.0,
        curves,
        name="coordinate_cross",
    )


def default_supports(j_size: int, count: int = DEFAULT_SUPPORT_COUNT) -> Tuple[Tuple[int, ...], ...]:
    """Deterministic windows of 1 to MAX_SUPPORT indices spread over range(j_size)."""
    supports = []
    for k in range(count):
        size = min(1 + k % MAX_SUPPORT, j_size)
        start = (37 * k) % j_size
        supports.append(tuple(sorted({(start + 3 * i) % j_size for i in range(size)})))
    return tuple(supports)


def _support_core(k: int, size: int):
    weights = np.cos(np.arange(1, size + 1) * (k + 1.0))
    kind = k % 3
    if kind == 0:
        return lambda z: sin(total(z * weights))
    if kind == 1:
        return lambda z: exp(0.5 * sin(z[0] * z[size - 1])) + total(z * weights)
    return lambda z: z[0] * z[size - 1] + cos(total(z * weights))


def validate_supports(j_size: int, supports: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    checked = []
    for support in supports:
        try:
            support = tuple(int(j) for j in support)
        except (TypeError, ValueError) as e:
            raise InvalidParameter(f"support {support!r} is not a list of indices") from e
        if not 1 <= len(support) <= MAX_SUPPORT:
            raise InvalidParameter(f"support {support} must hold 1 to {MAX_SUPPORT} indices")
        if len(set(support)) != len(support) or any(not 0 <= j < j_size for j in support):
            raise InvalidParameter(f"support {support} is not a set of indices below {j_size}")
        checked.append(support)
    return tuple(checked)


def r_power(
    j_size: int = DEFAULT_J_SIZE, supports: Optional[Sequence[Sequence[int]]] = None
) -> SpaceDescriptor:
    """
    R^J for a finite index set J = range(j_size) with the product structure.

    Every generating function is a FiniteSupportFunction: the coordinate
    functions and one windowed nonlinear function per declared support.
    """
    if int(j_size) != j_size or j_size < 1:
        raise InvalidParameter(f"r_power needs J_size >= 1, got {j_size}")
    j_size = int(j_size)
    supports = validate_supports(
        j_size, default_supports(j_size) if supports is None else supports
    )
    name = f"r_power({j_size})"
    functions = [
        FiniteSupportFunction.build(name, (j,), lambda z: z[0], f"x{j}") for j in range(j_size)
    ]
    functions += [
        FiniteSupportFunction.build(name, support, _support_core(k, len(support)), f"w{k}")
        for k, support in enumerate(supports)
    ]
    j = np.arange(j_size)
    direction = np.cos(j + 1.0)
    rates = 1.0 + j % 3
    offsets = 0.1 * np.sin(j)
    parity = (j % 2).astype(float)
    curves = (
        Curve(name, lambda u: u * direction, "line"),
        Curve(name, lambda u: sin(u * rates), "waves"),
        Curve(name, lambda u: offsets + exp(0.1 * u) * direction, "drift"),
        Curve(name, lambda u: (u * u) * parity, "parabola"),
    )
    return SpaceDescriptor(
        name=name,
        point_arity=j_size,
        membership=lambda x: True,
        gen_functions=tuple(functions),
        gen_curves=curves,
        chart=identity_chart(j_size),
    )


_SPACES = {
    "euclidean": (euclidean, ("n",)),
    "circle": (circle, ()),
    "coordinate_cross": (coordinate_cross, ()),
    "r_power": (r_power, ("J_size", "supports")),
}


def space_names() -> Dict[str, Tuple[str, ...]]:
    return {name: params for name, (_, params) in _SPACES.items()}


def builtin_space(name: str, **params: Any) -> SpaceDescriptor:
    """
    Builds a registered space by name.

    :raises InvalidParameter: For unknown names or parameters.
    """
    if name not in _SPACES:
        raise InvalidParameter(f"unknown space '{name}'; known: {', '.join(_SPACES)}")
    factory, accepted = _SPACES[name]
    unknown = set(params) - set(accepted)
    if unknown:
        raise InvalidParameter(f"space '{name}' does not take {sorted(unknown)}")
    if name == "r_power" and "J_size" in params:
        params = dict(params)
        params["j_size"] = params.pop("J_size")
    if name == "euclidean" and "n" not in params:
        raise InvalidParameter("euclidean needs the parameter n")
    logger.debug(f"Building space {name} with {params}")
    try:
        return factory(**params)
    except FrolicError:
        raise
    except (TypeError, ValueError) as e:
        raise InvalidParameter(f"bad parameters for space '{name}': {e}") from e
