import numpy as np
import pytest

from frolic.errors import BasePointMismatch, ChartDomainError, InvalidParameter, NotAHomomorphism
from frolic.group import (
    GroupHomomorphism,
    additive,
    analyze,
    builtin_group,
    chart_line,
    check_group_axioms,
    check_homomorphism,
    conjugation,
    from_spectrum,
    gl,
    group_from_spec,
    group_names,
    heisenberg3,
    heisenberg_center_quotient,
    identity_homomorphism,
    left_translate,
    loop_evaluation,
    loop_group,
    loop_nodes,
    product_group,
    quadrature_nodes,
    r_power,
    right_translate,
    sample_lie_tangent,
    sample_point,
    sl2,
    so3,
    so3_exp,
    so3_log,
    spectrum,
    synthesize,
    tangent_add,
    tangent_neg,
    tg_mul,
    torus2,
    zero_tangent,
)
from frolic.jet import s_seed
from frolic.tangent import TangentVector, pairing, tangent_equal


@pytest.fixture(
    params=["gl2", "so3", "sl2", "heisenberg3", "additive3", "torus2", "r_power", "product", "loop"]
)
def group(request):
    return {
        "gl2": lambda: gl(2),
        "so3": so3,
        "sl2": sl2,
        "heisenberg3": heisenberg3,
        "additive3": lambda: additive(3),
        "torus2": torus2,
        "r_power": lambda: r_power(8),
        "product": lambda: product_group(so3(), additive(1)),
        "loop": lambda: loop_group(0, so3()),
    }[request.param]()


def test_builtin_groups_satisfy_the_axioms(group):
    report = check_group_axioms(group, trials=5, seed=11)
    assert report.passed, report.failures
    assert report.checks == 30


def test_samples_land_in_the_group(group):
    rng = np.random.default_rng(3)
    for _ in range(5):
        assert group.space.contains(sample_point(group, rng))


def test_gl_chart_and_membership():
    group = gl(2)
    assert group.name == "gl(2)"
    assert group.lie_dim == 4
    assert group.to_coords(group.identity).tolist() == [0.0, 0.0, 0.0, 0.0]
    assert not group.space.contains(np.array([1.0, 2.0, 2.0, 4.0]))
    with pytest.raises(InvalidParameter):
        gl(5)


def test_so3_chart_round_trip_and_cut():
    y = np.array([0.3, -0.2, 0.5])
    assert np.allclose(so3_log(so3_exp(y)), y, atol=1e-12)
    with pytest.raises(ChartDomainError):
        so3_log(so3_exp(np.array([np.pi, 0.0, 0.0])))


def test_so3_log_near_the_identity_is_smooth():
    lifted = so3_log(so3_exp(s_seed() * np.array([1.0, 2.0, 0.0])))
    assert np.allclose(lifted.ds, [1.0, 2.0, 0.0], atol=1e-12)


def test_sl2_chart_rejects_nonpositive_pivot():
    group = sl2()
    with pytest.raises(ChartDomainError):
        group.from_coords(np.array([-1.0, 0.0, 0.0]))


def test_heisenberg_chart():
    group = heisenberg3()
    point = group.from_coords(np.array([1.0, 2.0, 3.0]))
    assert point.reshape(3, 3).tolist() == [[1.0, 1.0, 3.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]]
    assert group.to_coords(point).tolist() == [1.0, 2.0, 3.0]


def test_torus_wraps_angles():
    group = torus2()
    total = group.mul(np.array([3.0, 0.0]), np.array([1.0, 0.5]))
    assert total[0] == pytest.approx(4.0 - 2.0 * np.pi)
    assert total[1] == 0.5


def test_tangent_arithmetic_at_the_identity():
    group = additive(2)
    x1, x2 = group.space.gen_functions
    v = TangentVector(group.space, group.identity, chart_line(group, [1.0, 2.0]))
    w = TangentVector(group.space, group.identity, chart_line(group, [3.0, -1.0]))
    total = tangent_add(group, v, w)
    assert [pairing(total, x1), pairing(total, x2)] == [4.0, 1.0]
    negated = tangent_neg(group, v)
    assert [pairing(negated, x1), pairing(negated, x2)] == [-1.0, -2.0]
    assert tangent_equal(tangent_add(group, v, negated), zero_tangent(group))


def test_tangent_add_needs_a_common_base():
    group = additive(1)
    v = zero_tangent(group)
    w = zero_tangent(group, np.array([1.0]))
    with pytest.raises(BasePointMismatch):
        tangent_add(group, v, w)


def test_translations_and_tg_mul_in_gl():
    group = gl(2)
    rng = np.random.default_rng(8)
    g = sample_point(group, rng)
    v = sample_lie_tangent(group, rng)
    left = left_translate(group, g, v)
    right = right_translate(group, v, g)
    assert np.allclose(left.base, g)
    assert np.allclose(right.base, g)
    # g·[c] has matrix velocity g·C
    velocity = np.array([pairing(left, f) for f in group.space.gen_functions]).reshape(2, 2)
    inner = np.array([pairing(v, f) for f in group.space.gen_functions]).reshape(2, 2)
    assert np.allclose(velocity, g.reshape(2, 2) @ inner, atol=1e-12)


def test_tg_mul_adds_velocities_at_the_identity():
    group = gl(2)
    v = TangentVector(group.space, group.identity, chart_line(group, [1.0, 2.0, 0.0, -1.0]))
    w = TangentVector(group.space, group.identity, chart_line(group, [0.5, 0.0, 3.0, 1.0]))
    product = tg_mul(group, v, w)
    assert group.space.points_equal(product.base, group.identity)
    assert [pairing(product, f) for f in group.space.gen_functions] == [1.5, 2.0, 3.0, 0.0]


def test_registry():
    names = group_names()
    expected = {"gl", "so3", "sl2", "heisenberg3", "additive", "torus2", "r_power", "loop_group", "product"}
    assert expected <= set(names)
    assert names["gl"] == {"params": ["n"], "lie_dim": "n*n"}
    assert builtin_group("gl", n=3).lie_dim == 9
    assert group_from_spec({"group": "additive", "n": 2}).name == "additive(2)"
    assert group_from_spec({"kind": "so3", "params": {}}).name == "so3"
    factors = ["so3", {"group": "additive", "n": 1}]
    assert group_from_spec({"group": "product", "factors": factors}).lie_dim == 4


def test_registry_rejects_bad_specs():
    with pytest.raises(InvalidParameter):
        builtin_group("e8")
    with pytest.raises(InvalidParameter):
        builtin_group("gl")
    with pytest.raises(InvalidParameter):
        builtin_group("so3", n=3)
    with pytest.raises(InvalidParameter):
        builtin_group("product", factors=["so3"])
    with pytest.raises(InvalidParameter):
        group_from_spec(42)


def test_r_power_group_keeps_supports():
    group = r_power(10, supports=[[0, 1]])
    assert group.params == {"J_size": 10, "supports": [[0, 1]]}
    assert group.lie_dim == 10


def test_fourier_synthesis_round_trip():
    nodes = quadrature_nodes(2)
    assert len(nodes) == 24
    coeffs = np.random.default_rng(4).normal(size=(5, 3))
    assert np.allclose(analyze(synthesize(coeffs, nodes), 2), coeffs, atol=1e-12)
    with pytest.raises(InvalidParameter):
        analyze(synthesize(coeffs, nodes), 12)


def test_loop_group_layout():
    group = loop_group(1, so3())
    assert group.name == "loop_group(1, so3)"
    assert group.lie_dim == 48
    assert group.space.point_arity == 144
    assert len(loop_nodes(group)) == 16
    with pytest.raises(InvalidParameter):
        loop_group(4, so3())
    with pytest.raises(InvalidParameter):
        loop_nodes(so3())


def test_full_spectrum_keeps_the_nyquist_mode():
    nodes = quadrature_nodes(0)
    values = np.random.default_rng(9).normal(size=(8, 2))
    coeffs = spectrum(values)
    assert coeffs.shape == (8, 2)
    assert np.allclose(from_spectrum(coeffs, nodes), values, atol=1e-12)
    alternating = np.cos(4 * nodes)
    assert np.allclose(spectrum(alternating)[-1], 1.0)
    assert np.allclose(spectrum(alternating)[:-1], 0.0, atol=1e-12)
    assert np.allclose(spectrum(values, 2), analyze(values, 2))


def test_loop_chart_uses_fourier_coefficients():
    group = loop_group(0, so3())
    assert group.lie_dim == 24
    coeffs = np.zeros((8, 3))
    coeffs[1, 0] = 0.3
    point = group.space.chart.from_coords(coeffs.ravel())
    for q, theta in enumerate(loop_nodes(group)):
        expected = so3_exp(np.array([0.3 * np.cos(theta), 0.0, 0.0]))
        assert np.allclose(point[9 * q : 9 * q + 9], expected, atol=1e-12)
    assert np.allclose(group.space.chart.to_coords(point), coeffs.ravel(), atol=1e-12)


def test_truncated_loop_chart():
    group = loop_group(1, so3(), chart_degree=1)
    assert group.name == "loop_group(1, so3, 1)"
    assert group.lie_dim == 9
    assert group.space.point_arity == 144
    assert group.params["chart_degree"] == 1
    assert len(group.algebra.basis) == 9
    coeffs = np.array([[0.1, 0.0, 0.2], [0.0, 0.3, 0.0], [0.0, 0.0, -0.2]])
    point = group.space.chart.from_coords(coeffs.ravel())
    assert group.space.chart.contains(point)
    assert np.allclose(group.space.chart.to_coords(point), coeffs.ravel(), atol=1e-12)
    rng = np.random.default_rng(3)
    assert len(sample_lie_tangent(group, rng).rep(0.5)) == 144
    for degree in (0, 8, 1.5):
        with pytest.raises(InvalidParameter):
            loop_group(1, so3(), chart_degree=degree)
    assert builtin_group("loop_group", modes=0, chart_degree=2).lie_dim == 15


def test_truncated_loop_chart_rejects_wide_band_points():
    group = loop_group(0, so3(), chart_degree=1)
    wide = loop_group(0, so3())
    coeffs = np.zeros((8, 3))
    coeffs[3, 2] = 0.2
    assert not group.space.chart.contains(wide.space.chart.from_coords(coeffs.ravel()))


def test_homomorphisms_respect_products():
    group = so3()
    rng = np.random.default_rng(1)
    assert check_homomorphism(identity_homomorphism(group)) == 0.0
    assert check_homomorphism(conjugation(group, sample_point(group, rng)), trials=10) < 1e-12
    assert check_homomorphism(heisenberg_center_quotient(), trials=10) < 1e-14
    loop = loop_group(0, so3())
    assert check_homomorphism(loop_evaluation(loop, 3, so3()), trials=5) == 0.0


def test_check_homomorphism_rejects_non_homomorphisms():
    group = gl(2)
    squaring = GroupHomomorphism(group, group, lambda x: group.mul(x, x), "square")
    with pytest.raises(NotAHomomorphism):
        check_homomorphism(squaring, trials=5)


def test_homomorphism_constructors_validate():
    with pytest.raises(InvalidParameter):
        conjugation(so3(), np.zeros(9))
    loop = loop_group(0, so3())
    with pytest.raises(InvalidParameter):
        loop_evaluation(loop, 8, so3())
    with pytest.raises(InvalidParameter):
        loop_evaluation(loop, 0, sl2())
