import numpy as np
import pytest

from frolic.errors import InvalidParameter
from frolic.jet import exp, sin, sqrt, stack
from frolic.smooth import (
    Curve,
    RealFunction,
    SmoothMap,
    TwoParamMap,
    deriv_at_zero,
    mixed_partial_at_zero,
    smoothness_probe,
)

R2 = "euclidean(2)"


def x1(name=R2):
    return RealFunction(name, lambda x: x[0], "x1")


def x2():
    return RealFunction(R2, lambda x: x[1], "x2")


def test_deriv_at_zero_examples():
    assert deriv_at_zero(x1() * x1(), Curve(R2, lambda u: stack([u, 0.0 * u]))) == 0.0
    assert deriv_at_zero(x1(), Curve(R2, lambda u: stack([3.0 * u, u]))) == 3.0
    assert deriv_at_zero(x1().then(sin), Curve(R2, lambda u: stack([u, u]))) == 1.0


def test_mixed_partial_examples():
    assert mixed_partial_at_zero(x1(), TwoParamMap(R2, lambda s, t: stack([s * t, s]))) == 1.0
    assert mixed_partial_at_zero(x1(), TwoParamMap(R2, lambda s, t: stack([s + t, s]))) == 0.0
    assert mixed_partial_at_zero(x1() * x2(), TwoParamMap(R2, lambda s, t: stack([s, t]))) == 1.0


def test_pairing_rejects_foreign_space():
    with pytest.raises(InvalidParameter):
        deriv_at_zero(x1("circle"), Curve(R2, lambda u: stack([u, u])))


def test_vector_valued_function_is_rejected():
    identity = RealFunction(R2, lambda x: x, "id")
    with pytest.raises(InvalidParameter):
        deriv_at_zero(identity, Curve(R2, lambda u: stack([u, u])))


def test_smoothness_probe_passes_on_smooth_composites():
    line = Curve("euclidean(1)", lambda u: stack([u]), "line")
    square = RealFunction("euclidean(1)", lambda x: x[0] * x[0], "x²")
    report = smoothness_probe(square, line, [0.0, 1.0], 1e-5)
    assert report.passed
    assert report.checks == 2
    report = smoothness_probe(square.then(exp, "exp"), line, [-1.0, 0.0, 1.0], 1e-5)
    assert report.passed


def test_smoothness_probe_detects_a_kink():
    line = Curve("euclidean(1)", lambda u: stack([u]), "line")
    kink = RealFunction("euclidean(1)", lambda x: abs(x[0]), "|x|")
    report = smoothness_probe(kink, line, [0.0], 1e-5)
    assert not report.passed
    assert report.worst_deviation > 1e-5
    assert "|x|" in report.failures[0]


def test_smoothness_probe_reports_domain_errors():
    line = Curve("euclidean(1)", lambda u: stack([u]), "line")
    root = RealFunction("euclidean(1)", lambda x: sqrt(x[0]), "sqrt")
    report = smoothness_probe(root, line, [-1.0, 1.0])
    assert not report.passed
    assert len(report.failures) == 1


def test_smoothness_probe_needs_samples():
    line = Curve("euclidean(1)", lambda u: stack([u]), "line")
    with pytest.raises(InvalidParameter):
        smoothness_probe(x1("euclidean(1)"), line, [])


def test_composition_and_algebra_of_functions():
    phi = SmoothMap(R2, "euclidean(1)", lambda x: stack([x[0] + x[1]]), "sum")
    f = RealFunction("euclidean(1)", lambda x: x[0], "y")
    c = Curve(R2, lambda u: stack([u, u]), "diagonal")
    assert deriv_at_zero(f, c.then(phi)) == 2.0
    assert deriv_at_zero(f.precompose(phi), c) == 2.0
    assert deriv_at_zero(x1() * 3.0 - x2(), c) == 2.0
    assert deriv_at_zero(-x1(), c.reparametrize(lambda u: 2.0 * u)) == -2.0
    assert deriv_at_zero(x1(), c.shifted(1.5)) == 1.0
    assert SmoothMap.identity(R2)(np.array([1.0, 2.0])).tolist() == [1.0, 2.0]
