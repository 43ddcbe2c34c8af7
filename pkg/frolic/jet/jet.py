import numpy as np

from typing import Any, Callable, Iterable, Sequence, Tuple, Union

from frolic.errors import DomainError, ZeroValuePart
from frolic.log import get_logger

logger = get_logger(__name__)


class Jet2:
    """
    Element of the ring R[s, t] / (s^2, t^2).

    The four coefficients are the value, the two first partials and the mixed
    partial of whatever program produced the jet, all taken at (0, 0). Each
    coefficient is either a float or a numpy array; all four share one shape,
    so a jet with array coefficients is an array of jets.

    Jets are immutable: array coefficients are frozen on construction.
    """

    __slots__ = ("val", "ds", "dt", "dst")

    # numpy operands defer to the reflected operators below
    __array_ufunc__ = None

    def __init__(self, val, ds=0.0, dt=0.0, dst=0.0):
        if np.ndim(val) == 0 and all(np.ndim(x) == 0 for x in (ds, dt, dst)):
            parts = tuple(float(x) for x in (val, ds, dt, dst))
        else:
            shape = np.broadcast_shapes(*(np.shape(x) for x in (val, ds, dt, dst)))
            parts = []
            for x in (val, ds, dt, dst):
                arr = np.array(np.broadcast_to(np.asarray(x, dtype=float), shape))
                arr.flags.writeable = False
                parts.append(arr)
            parts = tuple(parts)
        for name, part in zip(Jet2.__slots__, parts):
            object.__setattr__(self, name, part)

    def __setattr__(self, name, value):
        raise AttributeError("Jet2 is immutable")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.val!r}, {self.ds!r}, {self.dt!r}, {self.dst!r})"

    # -- shape -----------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, ...]:
        return np.shape(self.val)

    @property
    def ndim(self) -> int:
        return np.ndim(self.val)

    def __len__(self) -> int:
        if self.ndim == 0:
            raise TypeError("scalar Jet2 has no length")
        return self.shape[0]

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __getitem__(self, index) -> "Jet2":
        return _wrap(self.val[index], self.ds[index], self.dt[index], self.dst[index])

    def as_tuple(self) -> Tuple[float, float, float, float]:
        """Coefficients of a scalar jet as plain floats."""
        return float(self.val), float(self.ds), float(self.dt), float(self.dst)

    def value_part(self):
        return self.val

    def nilpotent_part(self) -> "Jet2":
        return _wrap(np.zeros_like(self.val), self.ds, self.dt, self.dst)

    def map_parts(self, fn: Callable) -> "Jet2":
        """Applies a linear map to each coefficient, e.g. a reshape or a slice."""
        return _wrap(fn(self.val), fn(self.ds), fn(self.dt), fn(self.dst))

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "Jet2":
        return _wrap(-self.val, -self.ds, -self.dt, -self.dst)

    def __pos__(self) -> "Jet2":
        return self

    def __add__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return _wrap(
                self.val + other.val,
                self.ds + other.ds,
                self.dt + other.dt,
                self.dst + other.dst,
            )
        return _wrap(self.val + other, self.ds, self.dt, self.dst)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return _wrap(
                self.val - other.val,
                self.ds - other.ds,
                self.dt - other.dt,
                self.dst - other.dst,
            )
        return _wrap(self.val - other, self.ds, self.dt, self.dst)

    def __rsub__(self, other) -> "Jet2":
        return _wrap(other - self.val, -self.ds, -self.dt, -self.dst)

    def __mul__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return _wrap(
                self.val * other.val,
                self.val * other.ds + self.ds * other.val,
                self.val * other.dt + self.dt * other.val,
                self.val * other.dst
                + self.ds * other.dt
                + self.dt * other.ds
                + self.dst * other.val,
            )
        return self.scale(other)

    def __rmul__(self, other) -> "Jet2":
        return self.scale(other)

    def scale(self, k) -> "Jet2":
        return _wrap(self.val * k, self.ds * k, self.dt * k, self.dst * k)

    def __matmul__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return _wrap(
                self.val @ other.val,
                self.val @ other.ds + self.ds @ other.val,
                self.val @ other.dt + self.dt @ other.val,
                self.val @ other.dst
                + self.ds @ other.dt
                + self.dt @ other.ds
                + self.dst @ other.val,
            )
        return _wrap(self.val @ other, self.ds @ other, self.dt @ other, self.dst @ other)

    def __rmatmul__(self, other) -> "Jet2":
        return _wrap(other @ self.val, other @ self.ds, other @ self.dt, other @ self.dst)

    def __truediv__(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            q = self * reciprocal(other)
            return _wrap(self.val / other.val, q.ds, q.dt, q.dst)
        if np.any(np.asarray(other) == 0):
            raise ZeroValuePart("division of a jet by zero")
        return self.map_parts(lambda part: part / other)

    def __rtruediv__(self, other) -> "Jet2":
        q = reciprocal(self) * other
        return _wrap(other / self.val, q.ds, q.dt, q.dst)

    def __pow__(self, p) -> "Jet2":
        if isinstance(p, Jet2):
            return exp(p * log(self))
        return pow(self, p)

    def __rpow__(self, base) -> "Jet2":
        return exp(self * log(base))

    def __abs__(self) -> "Jet2":
        # one-sided at zero: the + branch is taken
        return self.scale(np.where(np.asarray(self.val) >= 0, 1.0, -1.0))

    @property
    def T(self) -> "Jet2":
        return self.map_parts(np.transpose)


class Jet2Matrix(Jet2):
    """A Jet2 whose coefficients are matrices of one common shape."""

    __slots__ = ()

    def __init__(self, val, ds=0.0, dt=0.0, dst=0.0):
        super().__init__(val, ds, dt, dst)
        if self.ndim != 2:
            raise ValueError(f"Jet2Matrix needs 2-d coefficients, got shape {self.shape}")

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    @property
    def entries(self):
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]


Scalar = Union[float, np.ndarray, Jet2]


def _wrap(val, ds, dt, dst) -> Jet2:
    if np.ndim(val) == 2:
        return Jet2Matrix(val, ds, dt, dst)
    return Jet2(val, ds, dt, dst)


def is_jet(x: Any) -> bool:
    return isinstance(x, Jet2)


def value(x: Any):
    """Value part of a jet; plain numbers and arrays pass through."""
    if isinstance(x, Jet2):
        return x.val
    return x


def lift(x: Any) -> Jet2:
    if isinstance(x, Jet2):
        return x
    return _wrap(np.asarray(x, dtype=float) if np.ndim(x) else float(x), 0.0, 0.0, 0.0)


def s_seed(x0: float = 0.0) -> Jet2:
    """The jet of s -> x0 + s."""
    return Jet2(x0, 1.0, 0.0, 0.0)


def t_seed(x0: float = 0.0) -> Jet2:
    """The jet of t -> x0 + t."""
    return Jet2(x0, 0.0, 1.0, 0.0)


def diagonal_seed(x0: float = 0.0) -> Jet2:
    """
    The jet of (s, t) -> x0 + s + t.

    For a one-variable program p, p(diagonal_seed(x0)) carries p'(x0) in ds
    and p''(x0) in dst.
    """
    return Jet2(x0, 1.0, 1.0, 0.0)


def reciprocal(a: Jet2) -> Jet2:
    """
    1/a by the terminating expansion v^-1 (1 - n/v + (n/v)^2), n = a - v.

    :raises ZeroValuePart: If the value part vanishes anywhere.
    """
    if np.any(np.asarray(a.val) == 0):
        raise ZeroValuePart(f"cannot invert a jet with zero value part: {a!r}")
    w = 1.0 / a.val
    x = a.nilpotent_part() * w
    return (1.0 - x + x * x) * w


# -- elementary functions ----------------------------------------------------


def _compose(a: Jet2, f0, f1, f2) -> Jet2:
    # f(v + n) = f(v) + f'(v) n + f''(v) n^2 / 2 with n^2 = 2 ds dt (s t)
    return _wrap(f0, f1 * a.ds, f1 * a.dt, f1 * a.dst + f2 * a.ds * a.dt)


def _check(ok, fn: str, x) -> None:
    if not np.all(ok):
        raise DomainError(f"{fn} is undefined at {x!r}")


def sin(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        return _compose(x, np.sin(x.val), np.cos(x.val), -np.sin(x.val))
    return np.sin(x)


def cos(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        return _compose(x, np.cos(x.val), -np.sin(x.val), -np.cos(x.val))
    return np.cos(x)


def exp(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        e = np.exp(x.val)
        return _compose(x, e, e, e)
    return np.exp(x)


def log(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        _check(x.val > 0, "log", x)
        return _compose(x, np.log(x.val), 1.0 / x.val, -1.0 / (x.val * x.val))
    _check(np.asarray(x) > 0, "log", x)
    return np.log(x)


def sqrt(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        _check(x.val > 0, "sqrt", x)
        r = np.sqrt(x.val)
        return _compose(x, r, 0.5 / r, -0.25 / (r * x.val))
    _check(np.asarray(x) >= 0, "sqrt", x)
    return np.sqrt(x)


def pow(x: Scalar, p: float) -> Scalar:
    """
    x ** p for a real exponent p.

    Integer exponents are defined for every base (negative ones need a
    non-zero base); other exponents need a positive base.
    """
    integral = float(p).is_integer()
    if isinstance(x, Jet2):
        if integral:
            p = int(p)
            if p == 0:
                return lift(np.ones_like(x.val) if x.ndim else 1.0)
            if p == 1:
                return x
            if p < 0:
                return reciprocal(pow(x, -p))
            return _compose(
                x,
                np.power(x.val, p),
                p * np.power(x.val, p - 1),
                p * (p - 1) * np.power(x.val, p - 2),
            )
        _check(x.val > 0, "pow", x)
        return _compose(
            x,
            np.power(x.val, p),
            p * np.power(x.val, p - 1),
            p * (p - 1) * np.power(x.val, p - 2),
        )
    if integral:
        if p < 0:
            _check(np.asarray(x) != 0, "pow", x)
        return np.power(x, int(p)) if np.ndim(x) else float(np.power(float(x), int(p)))
    _check(np.asarray(x) > 0, "pow", x)
    return np.power(x, p)


def atan(x: Scalar) -> Scalar:
    if isinstance(x, Jet2):
        d = 1.0 / (1.0 + x.val * x.val)
        return _compose(x, np.arctan(x.val), d, -2.0 * x.val * d * d)
    return np.arctan(x)


def atan2(y: Scalar, x: Scalar) -> Scalar:
    """
    Angle of the point (x, y), defined away from the origin.

    Jets are rotated by the angle of their value part, which leaves a
    quotient with (nearly) zero value whose arctangent carries the
    derivatives.
    """
    _check(
        (np.asarray(value(x)) != 0) | (np.asarray(value(y)) != 0),
        "atan2",
        (x, y),
    )
    if not isinstance(x, Jet2) and not isinstance(y, Jet2):
        return np.arctan2(y, x)
    x, y = lift(x), lift(y)
    theta = np.arctan2(y.val, x.val)
    c, s = np.cos(theta), np.sin(theta)
    q = atan((y * c - x * s) / (x * c + y * s))
    return _wrap(theta, q.ds, q.dt, q.dst)


# -- array helpers -------------------------------------------------------------


def stack(items: Iterable[Scalar]) -> Union[np.ndarray, Jet2]:
    """Stacks scalars (or equally shaped arrays) along a new leading axis."""
    items = list(items)
    if not any(isinstance(x, Jet2) for x in items):
        return np.array(items, dtype=float)
    items = [lift(x) for x in items]
    return _wrap(*(np.stack([getattr(x, part) for x in items]) for part in Jet2.__slots__))


def concatenate(parts: Sequence[Union[np.ndarray, Jet2]]) -> Union[np.ndarray, Jet2]:
    parts = list(parts)
    if not any(isinstance(x, Jet2) for x in parts):
        return np.concatenate([np.asarray(x, dtype=float) for x in parts])
    parts = [lift(x) for x in parts]
    return _wrap(*(np.concatenate([getattr(x, part) for x in parts]) for part in Jet2.__slots__))


def reshape(x, shape) -> Union[np.ndarray, Jet2]:
    if isinstance(x, Jet2):
        return x.map_parts(lambda a: np.reshape(a, shape))
    return np.reshape(np.asarray(x, dtype=float), shape)


def ravel(x) -> Union[np.ndarray, Jet2]:
    if isinstance(x, Jet2):
        return x.map_parts(np.ravel)
    return np.ravel(np.asarray(x, dtype=float))


def transpose(x):
    if isinstance(x, Jet2):
        return x.T
    return np.transpose(x)


def total(x) -> Scalar:
    """Sum of all entries."""
    if isinstance(x, Jet2):
        return Jet2(np.sum(x.val), np.sum(x.ds), np.sum(x.dt), np.sum(x.dst))
    return float(np.sum(x))


def trace(m) -> Scalar:
    if isinstance(m, Jet2):
        return Jet2(np.trace(m.val), np.trace(m.ds), np.trace(m.dt), np.trace(m.dst))
    return float(np.trace(m))


def horner(coefficients: Sequence[float], x: Scalar) -> Scalar:
    """Evaluates sum(c_k x^k) for scalar-generic x."""
    result = coefficients[-1]
    for c in reversed(coefficients[:-1]):
        result = result * x + c
    return result


def allclose(a: Jet2, b: Jet2, tol: float = 1e-12) -> bool:
    a, b = lift(a), lift(b)
    return all(
        np.allclose(getattr(a, part), getattr(b, part), rtol=0.0, atol=tol)
        for part in Jet2.__slots__
    )
