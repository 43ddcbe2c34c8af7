import numpy as np

from scipy.linalg import block_diag
from typing import Optional

from frolic.errors import InvalidParameter
from frolic.group.group import FrolicherGroupDescriptor, MatrixAlgebra
from frolic.jet import concatenate, is_jet, ravel, reshape, value
from frolic.log import get_logger
from frolic.smooth import Curve, RealFunction
from frolic.space import Chart, SpaceDescriptor

logger = get_logger(__name__)

MAX_MODES = 3
# band limit on pointwise chart coordinates in a truncated chart
BAND_TOL = 1e-9


def quadrature_nodes(modes: int) -> np.ndarray:
    """The 8(N+1) equally spaced angles carrying a loop of degree N."""
    count = 8 * (modes + 1)
    return 2.0 * np.pi * np.arange(count) / count


def synthesize(coeffs, nodes) -> np.ndarray:
    """
    Evaluates trigonometric polynomials at the given angles.

    :param coeffs: Array of shape (2N+1, d): the constant term, then the
        cosine coefficients of modes 1..N, then the sine coefficients.
    :param nodes: Angles, shape (Q,).
    :return: Values of shape (Q, d).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim == 1:
        coeffs = coeffs[:, None]
    degree = (coeffs.shape[0] - 1) // 2
    modes = np.arange(1, degree + 1)
    angles = np.outer(np.asarray(nodes, dtype=float), modes)
    cosines = np.cos(angles) @ coeffs[1 : degree + 1]
    return coeffs[0] + cosines + np.sin(angles) @ coeffs[degree + 1 :]


def analyze(values, degree: int) -> np.ndarray:
    """
    Discrete Fourier truncation of samples at equally spaced angles to a
    trigonometric polynomial of the given degree; inverse of synthesize for
    degrees below half the sample count.
    """
    values = np.asarray(values, dtype=float)
    count = values.shape[0]
    if 2 * degree >= count:
        raise InvalidParameter(f"degree {degree} is not resolved by {count} samples")
    spectrum = np.fft.rfft(values, axis=0) / count
    cosines = 2.0 * spectrum[1 : degree + 1].real
    sines = -2.0 * spectrum[1 : degree + 1].imag
    return np.concatenate([spectrum[:1].real, cosines, sines])


def resolved_degree(count: int) -> int:
    """Highest mode below the Nyquist mode of ``count`` samples."""
    return (count - 1) // 2


def _alternating(count: int) -> np.ndarray:
    # cos of the Nyquist mode at the quadrature angles
    return np.where(np.arange(count) % 2 == 0, 1.0, -1.0)


def spectrum(values, degree: Optional[int] = None) -> np.ndarray:
    """
    Fourier coefficients of samples at the quadrature angles.

    With a degree this is analyze. Without one every mode the samples carry
    is kept: the analyze layout of resolved_degree(Q), followed for even Q by
    the cosine coefficient of the Nyquist mode, Q rows in all. The samples
    are then recovered exactly by from_spectrum.
    """
    values = np.asarray(values, dtype=float)
    count = values.shape[0]
    if degree is not None:
        return analyze(values, degree)
    coeffs = analyze(values, resolved_degree(count))
    if count % 2:
        return coeffs
    nyquist = np.tensordot(_alternating(count), values, axes=1) / count
    return np.concatenate([coeffs, np.asarray(nyquist)[None]])


def from_spectrum(coeffs, nodes, degree: Optional[int] = None) -> np.ndarray:
    """Values at ``nodes`` of a coefficient array in the layout of spectrum."""
    coeffs = np.asarray(coeffs, dtype=float)
    count = len(nodes)
    if degree is not None or count % 2:
        return synthesize(coeffs, nodes)
    nyquist = np.multiply.outer(_alternating(count), coeffs[-1])
    return synthesize(coeffs[:-1], nodes) + nyquist


def _linear(fn, x):
    # applies a linear map to plain arrays and to each coefficient of a jet
    return x.map_parts(fn) if is_jet(x) else fn(np.asarray(x, dtype=float))


def loop_group(
    modes: int, target: FrolicherGroupDescriptor, chart_degree: Optional[int] = None
) -> FrolicherGroupDescriptor:
    """
    Smooth loops S¹ -> target at desk scale.

    A loop is stored by its values at the quadrature angles, so group
    operations act node by node and are exact. Sampled loops and tangent
    vectors are trigonometric polynomials of degree <= modes.

    The chart at the identity takes the target chart at every node and
    reads off Fourier coefficients. By default all modes the nodes resolve
    are kept, so brackets of degree-N vectors (degree 2N) and nested ones are
    exact. With ``chart_degree`` K the coordinates are the coefficients of
    degree <= K, lie_dim is (2K+1)·dim(target) and a bracket is the pointwise
    bracket re-projected by Fourier truncation; nested brackets then differ
    from the pointwise ones once 2N > K.
    """
    if int(modes) != modes or not 0 <= modes <= MAX_MODES:
        raise InvalidParameter(
            f"loop_group needs 0 <= modes <= {MAX_MODES}, got {modes}"
        )
    if target.algebra is None:
        raise InvalidParameter(
            f"loop_group needs a matrix target group, got {target.name}"
        )
    modes = int(modes)
    nodes = quadrature_nodes(modes)
    count, arity, dim = len(nodes), target.space.point_arity, target.lie_dim
    top = resolved_degree(count)
    if chart_degree is not None:
        if int(chart_degree) != chart_degree or not modes <= chart_degree <= top:
            raise InvalidParameter(
                f"chart_degree must lie in [{modes}, {top}], got {chart_degree}"
            )
        chart_degree = int(chart_degree)
    rows = count if chart_degree is None else 2 * chart_degree + 1
    degree = top if chart_degree is None else chart_degree
    name = f"loop_group({modes}, {target.name})"
    if chart_degree is not None:
        name = f"loop_group({modes}, {target.name}, {chart_degree})"

    def at(x, q: int, width: int):
        return x[q * width : (q + 1) * width]

    def mul(a, b):
        return concatenate(
            [target.mul(at(a, q, arity), at(b, q, arity)) for q in range(count)]
        )

    def inv(a):
        return concatenate([target.inv(at(a, q, arity)) for q in range(count)])

    def node_coords(x):
        logs = [target.to_coords(at(x, q, arity)) for q in range(count)]
        return reshape(concatenate(logs), (count, dim))

    def to_coords(x):
        return ravel(_linear(lambda part: spectrum(part, chart_degree), node_coords(x)))

    def from_coords(y):
        coeffs = reshape(y, (rows, dim))
        values = _linear(lambda part: from_spectrum(part, nodes, chart_degree), coeffs)
        return concatenate([target.from_coords(values[q]) for q in range(count)])

    def in_chart(x):
        if not all(target.space.chart.contains(at(x, q, arity)) for q in range(count)):
            return False
        if chart_degree is None:
            return True
        logs = np.asarray(value(node_coords(x)), dtype=float)
        band = synthesize(analyze(logs, chart_degree), nodes)
        return bool(np.max(np.abs(band - logs)) <= BAND_TOL)

    def membership(x):
        return all(target.space.contains(at(x, q, arity)) for q in range(count))

    functions = tuple(
        RealFunction(name, lambda x, q=q, f=f: f(at(x, q, arity)), f"{f.name}@{q}")
        for q in range(count)
        for f in target.space.gen_functions
    )
    curves = tuple(
        Curve(
            name,
            lambda u, c=c, m=m: concatenate(
                [c(u * float(np.cos(m * theta))) for theta in nodes]
            ),
            f"{c.name}·cos{m}θ",
        )
        for c in target.space.gen_curves
        for m in range(modes + 1)
    )
    space = SpaceDescriptor(
        name=name,
        point_arity=count * arity,
        membership=membership,
        gen_functions=functions,
        gen_curves=curves,
        chart=Chart(rows * dim, to_coords, from_coords, in_chart),
    )

    def sampler(rng, scale):
        drawn = rng.normal(scale=scale / (2 * modes + 1), size=(2 * modes + 1, dim))
        coeffs = np.zeros((rows, dim))
        coeffs[: modes + 1] = drawn[: modes + 1]
        coeffs[degree + 1 : degree + modes + 1] = drawn[modes + 1 :]
        return coeffs.ravel()

    # profiles[q, r]: basis function r of the chart at node q
    profiles = from_spectrum(np.eye(rows), nodes, chart_degree)
    basis = [
        block_diag(*[profiles[q, r] * b for q in range(count)])
        for r in range(rows)
        for b in target.algebra.basis
    ]
    params = {"modes": modes, "target": target.name}
    if chart_degree is not None:
        params["chart_degree"] = chart_degree
    logger.debug(f"Built {name} with {count} nodes, lie_dim {rows * dim}")
    return FrolicherGroupDescriptor(
        name=name,
        space=space,
        mul=mul,
        inv=inv,
        identity=np.tile(np.asarray(value(target.identity)), count),
        lie_dim=rows * dim,
        algebra=MatrixAlgebra(basis),
        params=params,
        coordinate_sampler=sampler,
        sample_scale=target.sample_scale,
    )


def loop_nodes(group: FrolicherGroupDescriptor) -> np.ndarray:
    """Quadrature angles of a loop group built by loop_group."""
    if "modes" not in group.params:
        raise InvalidParameter(f"{group.name} is not a loop group")
    return quadrature_nodes(group.params["modes"])
