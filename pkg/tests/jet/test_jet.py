import numpy as np
import pytest

from hypothesis import given, strategies as st

from frolic.errors import DomainError, InvalidParameter, SingularValuePart, ZeroValuePart
from frolic.jet import (
    Jet2,
    Jet2Matrix,
    allclose,
    atan,
    atan2,
    cos,
    diagonal_seed,
    exp,
    from_entries,
    identity,
    lift,
    log,
    matrix_invert,
    pow,
    reciprocal,
    s_seed,
    sin,
    sqrt,
    stack,
    t_seed,
    total,
    trace,
    value,
)
from frolic.smooth import surface_deviations

coefficient = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
jets = st.builds(Jet2, coefficient, coefficient, coefficient, coefficient)


def test_product_example():
    product = Jet2(1, 2, 3, 4) * Jet2(5, 6, 7, 8)
    assert product.as_tuple() == (5.0, 16.0, 22.0, 60.0)


def test_reciprocal_examples():
    assert reciprocal(Jet2(2, 1, 0, 0)).as_tuple() == (0.5, -0.25, 0.0, 0.0)
    assert reciprocal(Jet2(1, 1, 1, 0)).as_tuple() == (1.0, -1.0, -1.0, 2.0)


def test_log_example():
    assert log(Jet2(1, 1, 1, 0)).as_tuple() == (0.0, 1.0, 1.0, -1.0)


def test_exp_and_sin_examples():
    assert exp(Jet2(0, 1, 0, 0)).as_tuple() == (1.0, 1.0, 0.0, 0.0)
    assert sin(Jet2(0, 1, 1, 0)).as_tuple() == (0.0, 1.0, 1.0, 0.0)


def test_seeds_are_nilpotent():
    s, t = s_seed(), t_seed()
    assert (s * s).as_tuple() == (0.0, 0.0, 0.0, 0.0)
    assert (t * t).as_tuple() == (0.0, 0.0, 0.0, 0.0)
    assert (s * t).as_tuple() == (0.0, 0.0, 0.0, 1.0)


@given(jets, jets, jets)
def test_ring_laws(a, b, c):
    assert allclose(a * b, b * a)
    assert allclose(a + b, b + a)
    assert allclose((a * b) * c, a * (b * c), tol=1e-9)
    assert allclose(a * (b + c), a * b + a * c, tol=1e-9)


@given(jets)
def test_nilpotent_part_cubes_to_zero(a):
    n = a.nilpotent_part()
    assert (n * n * n).as_tuple() == (0.0, 0.0, 0.0, 0.0)


@given(jets)
def test_reciprocal_inverts(a):
    if abs(a.val) < 0.5:
        a = a + 1.0 + abs(a.val)
    assert allclose(a * reciprocal(a), lift(1.0), tol=1e-6)


@given(
    st.floats(min_value=1e-2, max_value=4.0).flatmap(lambda v: st.sampled_from([v, -v])),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=-2.0, max_value=2.0),
    st.floats(min_value=-2.0, max_value=2.0),
)
def test_reciprocal_is_an_involution(val, ds, dt, dst):
    a = Jet2(val, ds, dt, dst)
    back = reciprocal(reciprocal(a))
    assert back.as_tuple() == pytest.approx(a.as_tuple(), rel=1e-12, abs=1e-12)


def test_division_value_part_matches_plain_division():
    assert (Jet2(3.0, 1.0) / Jet2(7.0, 2.0)).val == 3.0 / 7.0
    assert (1.0 / Jet2(3.0, 1.0)).val == 1.0 / 3.0
    assert (Jet2(3.0, 1.0) / 7.0).val == 3.0 / 7.0


def test_division_by_zero_value_part():
    with pytest.raises(ZeroValuePart):
        reciprocal(Jet2(0.0, 1.0))
    with pytest.raises(ZeroValuePart):
        Jet2(1.0, 1.0) / 0.0
    with pytest.raises(ZeroValuePart):
        1.0 / Jet2(0.0, 2.0, 1.0)


def test_domain_errors():
    with pytest.raises(DomainError):
        log(Jet2(-1.0, 1.0))
    with pytest.raises(DomainError):
        sqrt(Jet2(0.0, 1.0))
    with pytest.raises(DomainError):
        pow(Jet2(-2.0, 1.0), 0.5)
    with pytest.raises(DomainError):
        atan2(0.0, 0.0)
    with pytest.raises(DomainError):
        log(-1.0)


def test_plain_inputs_go_to_numpy():
    assert sin(0.3) == np.sin(0.3)
    assert exp(1.0) == np.exp(1.0)
    assert atan2(1.0, -1.0) == np.arctan2(1.0, -1.0)
    assert pow(2.0, 3) == 8.0


def test_diagonal_seed_carries_second_derivative():
    jet = sin(diagonal_seed(0.7))
    assert jet.ds == pytest.approx(np.cos(0.7), abs=1e-15)
    assert jet.dst == pytest.approx(-np.sin(0.7), abs=1e-15)


def test_atan2_matches_angle_derivatives():
    s = s_seed(0.0)
    # (cos(2 + s), sin(2 + s)) has angle 2 + s
    jet = atan2(sin(2.0 + s), cos(2.0 + s))
    assert jet.val == pytest.approx(2.0)
    assert jet.ds == pytest.approx(1.0, abs=1e-12)
    assert jet.dst == 0.0


def test_integer_powers():
    x = Jet2(2.0, 1.0, 1.0, 0.0)
    assert pow(x, 3).as_tuple() == (8.0, 12.0, 12.0, 12.0)
    assert allclose(pow(x, -1), reciprocal(x))
    assert pow(x, 0).as_tuple() == (1.0, 0.0, 0.0, 0.0)


def test_array_jets_index_and_reduce():
    x = stack([s_seed(1.0), t_seed(2.0), 3.0])
    assert x.shape == (3,)
    assert x[1].as_tuple() == (2.0, 0.0, 1.0, 0.0)
    assert total(x * x).as_tuple() == (14.0, 2.0, 4.0, 0.0)
    assert value(x).tolist() == [1.0, 2.0, 3.0]


def test_numpy_operands_defer_to_jets():
    x = stack([s_seed(), t_seed()])
    result = np.array([2.0, 3.0]) * x
    assert isinstance(result, Jet2)
    assert result.ds.tolist() == [2.0, 0.0]
    assert result.dt.tolist() == [0.0, 3.0]


def test_jets_are_immutable():
    x = Jet2(np.ones(2))
    with pytest.raises(AttributeError):
        x.val = np.zeros(2)
    with pytest.raises(ValueError):
        x.val[0] = 5.0


def test_matrix_invert_over_jets():
    rng = np.random.default_rng(7)
    a = Jet2Matrix(
        np.eye(3) + 0.3 * rng.normal(size=(3, 3)),
        rng.normal(size=(3, 3)),
        rng.normal(size=(3, 3)),
        rng.normal(size=(3, 3)),
    )
    product = a @ matrix_invert(a)
    assert isinstance(product, Jet2Matrix)
    assert allclose(product, identity(3, jet=True), tol=1e-10)


def test_jet_matrix_keeps_its_coefficients():
    e12 = np.array([[0.0, 1.0], [0.0, 0.0]])
    m = Jet2Matrix(np.eye(2), e12)
    assert m.val.tolist() == np.eye(2).tolist()
    assert m.ds.tolist() == e12.tolist()
    assert m.dt.tolist() == m.dst.tolist() == np.zeros((2, 2)).tolist()
    assert (m.rows, m.cols) == (2, 2)
    assert isinstance(m @ m, Jet2Matrix)


def test_matrix_invert_examples():
    assert allclose(matrix_invert(identity(3, jet=True)), identity(3, jet=True), tol=0.0)
    e12 = np.array([[0.0, 1.0], [0.0, 0.0]])
    inverse = matrix_invert(Jet2Matrix(np.eye(2), e12))
    assert inverse.val.tolist() == np.eye(2).tolist()
    assert inverse.ds.tolist() == (-e12).tolist()
    assert not inverse.dt.any() and not inverse.dst.any()


def test_one_by_one_matrix_invert_is_scalar_reciprocal():
    single = matrix_invert(from_entries([[Jet2(2, 1, 0, 0)]]))
    assert single[0, 0].as_tuple() == (0.5, -0.25, 0.0, 0.0)
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = Jet2(rng.uniform(0.5, 3.0) * rng.choice([-1.0, 1.0]), *rng.normal(size=3))
        got = matrix_invert(from_entries([[a]]))[0, 0].as_tuple()
        assert got == pytest.approx(reciprocal(a).as_tuple(), rel=1e-15, abs=1e-15)


def test_matrix_invert_plain_matches_numpy():
    m = np.array([[2.0, 1.0], [1.0, 3.0]])
    assert np.allclose(matrix_invert(m), np.linalg.inv(m), atol=1e-14)


def test_matrix_invert_rejects_singular_value_part():
    with pytest.raises(SingularValuePart):
        matrix_invert(Jet2Matrix(np.zeros((2, 2)), np.eye(2)))
    with pytest.raises(InvalidParameter):
        matrix_invert(np.ones((2, 3)))


def test_from_entries_and_trace():
    m = from_entries([[s_seed(1.0), 0.0], [0.0, t_seed(2.0)]])
    assert trace(m).as_tuple() == (3.0, 1.0, 1.0, 0.0)
    assert m.entries[1][1].as_tuple() == (2.0, 0.0, 1.0, 0.0)


def _random_program(rng, depth):
    """A random bounded program (s, t) -> R built from the jet namespace."""
    if depth == 0 or rng.uniform() < 0.25:
        a, b = rng.uniform(-1.0, 1.0, size=2)
        kind = rng.integers(3)
        if kind == 0:
            return lambda s, t: a * s + b
        if kind == 1:
            return lambda s, t: a * t + b
        return lambda s, t: a * s * t + b
    op = rng.integers(10)
    left = _random_program(rng, depth - 1)
    if op == 0:
        return lambda s, t: sin(left(s, t))
    if op == 1:
        return lambda s, t: cos(left(s, t))
    if op == 2:
        return lambda s, t: atan(left(s, t))
    # bounded arguments keep exp, log, sqrt and pow inside their domains
    if op == 3:
        return lambda s, t: exp(sin(left(s, t)))
    if op == 4:
        return lambda s, t: log(2.0 + cos(left(s, t)))
    if op == 5:
        return lambda s, t: sqrt(1.5 + sin(left(s, t)))
    if op == 6:
        p = rng.uniform(-2.0, 2.5)
        return lambda s, t: pow(2.0 + sin(left(s, t)), p)
    right = _random_program(rng, depth - 1)
    if op == 7:
        return lambda s, t: 0.5 * (left(s, t) + right(s, t))
    if op == 8:
        return lambda s, t: left(s, t) / (2.0 + cos(right(s, t)))
    return lambda s, t: left(s, t) * right(s, t)


def test_jet_partials_match_finite_differences_on_random_programs():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        program = _random_program(rng, 6)
        s0, t0 = rng.uniform(-0.5, 0.5, size=2)
        assert max(surface_deviations(program, s0, t0)) <= 1e-5
