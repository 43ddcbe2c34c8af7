import warnings

import numpy as np

from scipy.linalg import LinAlgWarning, lu_factor, lu_solve
from typing import Union

from frolic.errors import DomainError, InvalidParameter, SingularValuePart
from frolic.jet.jet import Jet2, Jet2Matrix, lift
from frolic.log import get_logger

logger = get_logger(__name__)

# smallest pivot magnitude accepted by the value-part elimination
PIVOT_THRESHOLD = 1e-12


def _square(shape) -> int:
    if len(shape) != 2 or shape[0] != shape[1]:
        raise InvalidParameter(f"expected a square matrix, got shape {shape}")
    return shape[0]


def value_inverse(value: np.ndarray) -> np.ndarray:
    """
    Inverts a real matrix by partial-pivot elimination.

    :param value: A square float matrix.
    :return: Its inverse.
    :raises SingularValuePart: If a pivot falls below PIVOT_THRESHOLD.
    :raises DomainError: If the matrix has non-finite entries.
    """
    value = np.asarray(value, dtype=float)
    n = _square(value.shape)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(value, check_finite=True)
    except ValueError as e:
        raise DomainError(f"cannot factor matrix with non-finite entries: {e}") from e
    smallest = float(np.min(np.abs(np.diag(lu))))
    if smallest < PIVOT_THRESHOLD:
        logger.debug(f"Rejecting {n}x{n} matrix with pivot {smallest:.3e}")
        raise SingularValuePart(
            f"value part is singular: pivot {smallest:.3e} below {PIVOT_THRESHOLD:g}"
        )
    return lu_solve((lu, piv), np.eye(n))


def matrix_invert(a: Union[np.ndarray, Jet2Matrix]) -> Union[np.ndarray, Jet2Matrix]:
    """
    Inverts a square matrix over the reals or over the jet ring.

    With V the value part and N the nilpotent part the inverse is
    V^-1 (I - N V^-1 + (N V^-1)^2); the cube of N V^-1 vanishes.

    :param a: A square float matrix or Jet2Matrix.
    :return: The inverse, of the same kind as the input.
    :raises SingularValuePart: If the value part cannot be inverted.
    """
    if not isinstance(a, Jet2):
        return value_inverse(a)
    n = _square(a.shape)
    w = value_inverse(a.val)
    x = a.nilpotent_part() @ w
    return w @ (np.eye(n) - x + x @ x)


def identity(n: int, jet: bool = False) -> Union[np.ndarray, Jet2Matrix]:
    """The n x n identity, optionally lifted to the jet ring."""
    eye = np.eye(n)
    return lift(eye) if jet else eye


def from_entries(entries) -> Jet2Matrix:
    """Builds a Jet2Matrix from a nested list of scalars or jets."""
    rows = [[lift(x) for x in row] for row in entries]
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        raise InvalidParameter("entries must form a non-empty rectangle")
    parts = [
        np.array([[getattr(x, part) for x in row] for row in rows], dtype=float)
        for part in Jet2.__slots__
    ]
    return Jet2Matrix(*parts)
