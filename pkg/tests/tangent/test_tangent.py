import numpy as np
import pytest

from hypothesis import given, settings, strategies as st

from frolic.errors import BasePointMismatch, ChartDomainError, InvalidParameter, NotAProductSpace
from frolic.group import additive, chart_line, tangent_add
from frolic.jet import cos, exp, sin, stack
from frolic.smooth import Curve, RealFunction, SmoothMap, TwoParamMap
from frolic.space import circle, coordinate_cross, euclidean, product
from frolic.tangent import (
    SecondTangentVector,
    TangentVector,
    chart_consistency,
    generators_with_pairing,
    pairing,
    product_join,
    product_split,
    sample_tangent,
    scalar_mul,
    second_tangent_map,
    tangent_deviation,
    tangent_equal,
    tangent_map,
    tx_curve_check,
    zero_vector,
)

PLANE = euclidean(2)
LINE = euclidean(1)
R2 = PLANE.name

coefficient = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def plane_vector(a, b=(0.0, 0.0), base=(0.0, 0.0)):
    a, b, base = np.asarray(a, float), np.asarray(b, float), np.asarray(base, float)
    return TangentVector(PLANE, base, Curve(R2, lambda u: base + u * a + (u * u) * b, "quadratic"))


def test_pairing_examples():
    x1, x2 = PLANE.gen_functions
    v = plane_vector((2.0, -1.0))
    assert pairing(v, x1) == 2.0
    assert pairing(v, x2) == -1.0
    assert pairing(v, x1 * x2) == 0.0
    w = plane_vector((2.0, -1.0), base=(1.0, 3.0))
    assert pairing(w, x1 * x2) == 5.0


def test_tangent_equal_ignores_second_order_terms():
    v = plane_vector((1.0, 1.0))
    w = plane_vector((1.0, 1.0), b=(4.0, -2.0))
    assert tangent_equal(v, w)
    assert not tangent_equal(v, plane_vector((1.0, 0.0)))
    circular = TangentVector(PLANE, (0.0, 0.0), Curve(R2, lambda u: stack([sin(u), 1.0 - cos(u)]), "arc"))
    assert tangent_equal(circular, plane_vector((1.0, 0.0)))


def test_tangent_deviation_needs_one_fibre():
    with pytest.raises(BasePointMismatch):
        tangent_deviation(plane_vector((1.0, 0.0)), plane_vector((1.0, 0.0), base=(1.0, 0.0)))
    with pytest.raises(BasePointMismatch):
        tangent_deviation(plane_vector((1.0, 0.0)), zero_vector(circle(), (1.0, 0.0)))


def test_scalar_multiplication():
    x1, x2 = PLANE.gen_functions
    v = scalar_mul(-2.0, plane_vector((1.5, 0.5), b=(1.0, 1.0)))
    assert pairing(v, x1) == -3.0
    assert pairing(v, x2) == -1.0
    assert tangent_equal(scalar_mul(0.0, v), zero_vector(PLANE, (0.0, 0.0)))


def test_representative_must_pass_through_base():
    with pytest.raises(InvalidParameter):
        TangentVector(PLANE, (1.0, 0.0), Curve(R2, lambda u: stack([u, u]), "diagonal"))
    with pytest.raises(InvalidParameter):
        TangentVector(circle(), (1.0, 0.0), Curve("circle", lambda u: stack([1.0 + u, 0.0 * u]), "off"))
    with pytest.raises(InvalidParameter):
        TangentVector(circle(), (1.0, 0.0), Curve(R2, lambda u: stack([1.0 + u, 0.0 * u]), "foreign"))


def test_tangent_map_of_a_sum():
    total = SmoothMap(R2, LINE.name, lambda x: stack([x[0] + x[1]]), "sum")
    pushed = tangent_map(total, plane_vector((2.0, 3.0), base=(1.0, 1.0)), LINE)
    assert pushed.base.tolist() == [2.0]
    assert pairing(pushed, LINE.gen_functions[0]) == 5.0
    with pytest.raises(InvalidParameter):
        tangent_map(total, plane_vector((1.0, 0.0)), PLANE)


def test_second_tangent_map():
    rep = TwoParamMap(R2, lambda s, t: stack([s * t, s + t]), "γ")
    xi = SecondTangentVector(PLANE, rep)
    assert xi.base.tolist() == [0.0, 0.0]
    swap = SmoothMap(R2, R2, lambda x: stack([x[1], x[0]]), "swap")
    pushed = second_tangent_map(swap, xi, PLANE)
    assert pushed.rep(2.0, 3.0).tolist() == [5.0, 6.0]
    with pytest.raises(InvalidParameter):
        SecondTangentVector(PLANE, rep, base=(1.0, 0.0))


def test_product_split_and_join():
    space = product(LINE, circle())
    a = TangentVector(LINE, (0.5,), Curve(LINE.name, lambda u: stack([0.5 + 2.0 * u]), "line"))
    b = TangentVector(circle(), (1.0, 0.0), circle().gen_curves[0])
    joined = product_join(space, a, b)
    assert joined.base.tolist() == [0.5, 1.0, 0.0]
    left, right = product_split(joined)
    assert tangent_equal(left, a)
    assert tangent_equal(right, b)
    with pytest.raises(NotAProductSpace):
        product_split(a)
    with pytest.raises(NotAProductSpace):
        product_join(space, b, a)


def test_tx_curve_check():
    assert tx_curve_check(TwoParamMap(LINE.name, lambda s, t: stack([s + t]), "s+t"), LINE).passed
    assert tx_curve_check(TwoParamMap(LINE.name, lambda s, t: stack([s * t]), "st"), LINE).passed
    report = tx_curve_check(TwoParamMap(LINE.name, lambda s, t: stack([abs(s) * t]), "|s|t"), LINE)
    assert not report.passed
    assert all(failure.startswith("(iii)") for failure in report.failures)


def test_chart_consistency_on_the_circle():
    v = TangentVector(circle(), (1.0, 0.0), circle().gen_curves[0])
    assert chart_consistency(v) == pytest.approx([1.0], abs=1e-15)
    back = Curve("circle", lambda u: stack([-cos(u), sin(u)]), "back")
    flipped = TangentVector(circle(), (-1.0, 0.0), back)
    with pytest.raises(ChartDomainError):
        chart_consistency(flipped)
    with pytest.raises(ChartDomainError):
        chart_consistency(zero_vector(coordinate_cross(), (0.0, 0.0)))


def test_coordinate_cross_has_no_diagonal_velocity():
    cross = coordinate_cross()
    functions = cross.gen_functions
    assert generators_with_pairing(cross, (0.0, 0.0), functions, (1.0, 1.0)) == []
    assert [c.name for c in generators_with_pairing(cross, (0.0, 0.0), functions, (1.0, 0.0))] == ["x-axis"]
    assert [c.name for c in generators_with_pairing(cross, (0.0, 0.0), functions, (0.0, 0.0))] == ["switch"]


def test_sample_tangent_is_seeded():
    a = sample_tangent(circle(), np.random.default_rng(5))
    b = sample_tangent(circle(), np.random.default_rng(5))
    assert np.array_equal(a.base, b.base)
    assert tangent_equal(a, b, tol=0.0)
    v = sample_tangent(coordinate_cross(), np.random.default_rng(1))
    assert coordinate_cross().contains(v.base)


@settings(max_examples=50)
@given(coefficient, coefficient, coefficient, coefficient)
def test_pairing_is_linear_in_the_vector(k, a1, a2, b1):
    v = plane_vector((a1, a2), b=(b1, 0.0))
    for f in PLANE.gen_functions + (PLANE.gen_functions[0] * PLANE.gen_functions[1],):
        assert pairing(scalar_mul(k, v), f) == pytest.approx(k * pairing(v, f), abs=1e-12)


@settings(max_examples=50)
@given(coefficient, coefficient)
def test_pairing_is_a_derivation_in_the_function(a1, a2):
    v = plane_vector((a1, a2), base=(0.5, -1.0))
    f, g = PLANE.gen_functions
    h = RealFunction(R2, lambda x: sin(x[0]) + x[1], "h")
    expected = pairing(v, f) * h(v.base) + f(v.base) * pairing(v, h)
    assert pairing(v, f * h) == pytest.approx(expected, abs=1e-12)
    assert pairing(v, f + g) == pytest.approx(pairing(v, f) + pairing(v, g), abs=1e-12)


@settings(max_examples=50)
@given(coefficient, coefficient, coefficient, coefficient, coefficient)
def test_tangent_equal_is_an_equivalence(a1, a2, b1, b2, shift):
    u = plane_vector((a1, a2))
    v = plane_vector((a1, a2), b=(b1, b2))
    w = plane_vector((a1, a2), b=(b2, -b1))
    other = plane_vector((a1 + shift, a2))
    assert tangent_equal(u, u)
    assert tangent_equal(u, v) and tangent_equal(v, u)
    assert tangent_equal(v, w) and tangent_equal(u, w)
    assert tangent_equal(u, other) == tangent_equal(other, u)
    if tangent_equal(u, other):
        assert tangent_equal(v, other)


def test_tangent_map_is_linear_on_fibres():
    source, target = additive(2), additive(1)
    phi = SmoothMap(
        source.space.name, target.space.name, lambda x: stack([sin(x[0]) * x[1] + exp(x[0])]), "phi"
    )
    v = TangentVector(source.space, source.identity, chart_line(source, [1.0, 2.0]))
    w = TangentVector(source.space, source.identity, chart_line(source, [-0.5, 3.0]))
    push = lambda u: tangent_map(phi, u, target.space)
    assert tangent_equal(push(scalar_mul(3.0, v)), scalar_mul(3.0, push(v)))
    assert tangent_equal(push(tangent_add(source, v, w)), tangent_add(target, push(v), push(w)))
