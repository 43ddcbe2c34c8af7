from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple

from frolic.errors import DomainError, InvalidParameter
from frolic.jet import Jet2, diagonal_seed, lift, s_seed, t_seed
from frolic.log import get_logger

logger = get_logger(__name__)

FD_STEP = 1e-4
DEFAULT_SAMPLES = (-1.0, -0.3, 0.0, 0.3, 1.0)
DEFAULT_TOL = 1e-5


def _check_space(expected: str, actual: str, what: str) -> None:
    if expected != actual:
        raise InvalidParameter(f"{what}: expected space '{expected}', got '{actual}'")


@dataclass(frozen=True)
class Curve:
    """
    A curve R -> X given by a scalar-generic program.

    The program takes one smooth scalar (float or Jet2) and returns a point,
    a 1-d float array or a 1-d Jet2.
    """

    target: str
    program: Callable[[Any], Any] = field(repr=False)
    name: str = "curve"

    def __call__(self, u):
        return self.program(u)

    def then(self, phi: "SmoothMap") -> "Curve":
        _check_space(phi.source, self.target, f"composing {phi.name} after {self.name}")
        return Curve(phi.target, lambda u: phi(self(u)), f"{phi.name}∘{self.name}")

    def reparametrize(self, fn: Callable[[Any], Any], name: Optional[str] = None) -> "Curve":
        """The curve u -> self(fn(u))."""
        return Curve(self.target, lambda u: self(fn(u)), name or f"{self.name}∘reparam")

    def shifted(self, u0: float) -> "Curve":
        return self.reparametrize(lambda u: u0 + u, f"{self.name}(· + {u0:g})")


@dataclass(frozen=True)
class TwoParamMap:
    """A map R^2 -> X; the program takes the smooth scalars (s, t)."""

    target: str
    program: Callable[[Any, Any], Any] = field(repr=False)
    name: str = "surface"

    def __call__(self, s, t):
        return self.program(s, t)

    def at_s(self, s0: float) -> Curve:
        """The curve t -> self(s0, t)."""
        return Curve(self.target, lambda t: self(s0, t), f"{self.name}({s0:g}, ·)")

    def at_t(self, t0: float) -> Curve:
        """The curve s -> self(s, t0)."""
        return Curve(self.target, lambda s: self(s, t0), f"{self.name}(·, {t0:g})")

    def then(self, phi: "SmoothMap") -> "TwoParamMap":
        _check_space(phi.source, self.target, f"composing {phi.name} after {self.name}")
        return TwoParamMap(phi.target, lambda s, t: phi(self(s, t)), f"{phi.name}∘{self.name}")


@dataclass(frozen=True)
class RealFunction:
    """A function X -> R given by a scalar-generic program on points."""

    source: str
    program: Callable[[Any], Any] = field(repr=False)
    name: str = "f"

    def __call__(self, point):
        return self.program(point)

    def __add__(self, other) -> "RealFunction":
        if isinstance(other, RealFunction):
            _check_space(self.source, other.source, f"{self.name} + {other.name}")
            return RealFunction(
                self.source, lambda x: self(x) + other(x), f"({self.name} + {other.name})"
            )
        return RealFunction(self.source, lambda x: self(x) + other, f"({self.name} + {other})")

    __radd__ = __add__

    def __sub__(self, other) -> "RealFunction":
        return self + (-other if not isinstance(other, RealFunction) else other.scale(-1.0))

    def __mul__(self, other) -> "RealFunction":
        if isinstance(other, RealFunction):
            _check_space(self.source, other.source, f"{self.name} * {other.name}")
            return RealFunction(
                self.source, lambda x: self(x) * other(x), f"{self.name}·{other.name}"
            )
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self) -> "RealFunction":
        return self.scale(-1.0)

    def scale(self, k: float) -> "RealFunction":
        return RealFunction(self.source, lambda x: k * self(x), f"{k:g}·{self.name}")

    def then(self, unary: Callable[[Any], Any], name: str = "h") -> "RealFunction":
        """Post-composition with a scalar-generic function R -> R."""
        return RealFunction(self.source, lambda x: unary(self(x)), f"{name}∘{self.name}")

    def precompose(self, phi: "SmoothMap") -> "RealFunction":
        """The pullback f∘phi, a function on phi's source."""
        _check_space(self.source, phi.target, f"pulling {self.name} back along {phi.name}")
        return RealFunction(phi.source, lambda x: self(phi(x)), f"{self.name}∘{phi.name}")


@dataclass(frozen=True)
class SmoothMap:
    """A map between spaces given by a scalar-generic program on points."""

    source: str
    target: str
    program: Callable[[Any], Any] = field(repr=False)
    name: str = "phi"

    def __call__(self, point):
        return self.program(point)

    def then(self, psi: "SmoothMap") -> "SmoothMap":
        """The composite psi∘self."""
        _check_space(psi.source, self.target, f"composing {psi.name} after {self.name}")
        return SmoothMap(self.source, psi.target, lambda x: psi(self(x)), f"{psi.name}∘{self.name}")

    @classmethod
    def identity(cls, space: str) -> "SmoothMap":
        return cls(space, space, lambda x: x, "id")


def _scalar(result) -> Jet2:
    result = lift(result)
    if result.ndim != 0:
        raise InvalidParameter(f"expected a scalar result, got shape {result.shape}")
    return result


def deriv_at_zero(f: RealFunction, c: Curve) -> float:
    """
    (f∘c)'(0), read from the s-coefficient of f(c(s)).

    :raises DomainError: If the program leaves its real domain.
    """
    _check_space(f.source, c.target, f"pairing {f.name} with {c.name}")
    return float(_scalar(f(c(s_seed()))).ds)


def mixed_partial_at_zero(f: RealFunction, g: TwoParamMap) -> float:
    """∂²(f∘g)/∂s∂t at (0, 0), read from the st-coefficient."""
    _check_space(f.source, g.target, f"pairing {f.name} with {g.name}")
    return float(_scalar(f(g(s_seed(), t_seed()))).dst)


@dataclass
class ProbeReport:
    passed: bool
    worst_deviation: float = 0.0
    failures: List[str] = field(default_factory=list)
    checks: int = 0

    def record(self, deviation: float, tol: float, where: str) -> None:
        self.checks += 1
        self.worst_deviation = max(self.worst_deviation, deviation)
        if not deviation <= tol:
            self.passed = False
            self.failures.append(f"{where}: deviation {deviation:.3e}")

    def fail(self, where: str) -> None:
        self.checks += 1
        self.passed = False
        self.failures.append(where)

    def absorb(self, other: "ProbeReport") -> "ProbeReport":
        self.passed = self.passed and other.passed
        self.worst_deviation = max(self.worst_deviation, other.worst_deviation)
        self.failures.extend(other.failures)
        self.checks += other.checks
        return self


def _relative(jet_value: float, fd_value: float) -> float:
    return abs(jet_value - fd_value) / max(1.0, abs(jet_value))


def scalar_deviations(h: Callable[[Any], Any], u0: float) -> Tuple[float, float]:
    """
    Compares the jet derivatives of a one-variable program with central
    differences at u0.

    :return: Relative deviations of the first and the second derivative.
    """
    jet = _scalar(h(diagonal_seed(u0)))

    def plain(u: float) -> float:
        return float(_scalar(h(u)).val)

    first = (plain(u0 + FD_STEP) - plain(u0 - FD_STEP)) / (2.0 * FD_STEP)
    second = (
        plain(u0 + FD_STEP) - 2.0 * plain(u0) + plain(u0 - FD_STEP)
    ) / FD_STEP**2
    return _relative(float(jet.ds), first), _relative(float(jet.dst), second)


def smoothness_probe(
    f: RealFunction,
    c: Curve,
    sample_points: Sequence[float] = DEFAULT_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> ProbeReport:
    """
    Checks f∘c for classical smoothness at orders one and two.

    At each sample u0 the composite is reparametrized by u0 + u; its jet
    derivatives must agree with central finite differences. Domain errors
    at a sample are reported as failures.

    :param f: Function on the curve's target.
    :param c: The curve.
    :param sample_points: Non-empty list of parameters.
    :param tol: Relative tolerance.
    :return: A ProbeReport with the worst deviation seen.
    """
    if len(sample_points) == 0:
        raise InvalidParameter("smoothness_probe needs at least one sample point")
    _check_space(f.source, c.target, f"probing {f.name} along {c.name}")
    report = ProbeReport(passed=True)
    for u0 in sample_points:
        where = f"{f.name} along {c.name} at {u0:g}"
        try:
            first, second = scalar_deviations(lambda u: f(c(u)), float(u0))
        except DomainError as e:
            logger.warning(f"Probe of {where} left the domain: {e}")
            report.fail(f"{where}: {e}")
            continue
        report.record(max(first, second), tol, where)
    return report


def surface_deviations(h: Callable[[Any, Any], Any], s0: float, t0: float) -> Tuple[float, float, float]:
    """
    Compares the jet partials of a two-variable program with central
    differences at (s0, t0).

    :return: Relative deviations of ∂s, ∂t and ∂s∂t.
    """
    jet = _scalar(h(s_seed(s0), t_seed(t0)))

    def plain(s: float, t: float) -> float:
        return float(_scalar(h(s, t)).val)

    step = FD_STEP
    d_s = (plain(s0 + step, t0) - plain(s0 - step, t0)) / (2.0 * step)
    d_t = (plain(s0, t0 + step) - plain(s0, t0 - step)) / (2.0 * step)
    d_st = (
        plain(s0 + step, t0 + step)
        - plain(s0 + step, t0 - step)
        - plain(s0 - step, t0 + step)
        + plain(s0 - step, t0 - step)
    ) / (4.0 * step * step)
    return (
        _relative(float(jet.ds), d_s),
        _relative(float(jet.dt), d_t),
        _relative(float(jet.dst), d_st),
    )
