import logging

import numpy as np
import pytest

import frolic.workbench as workbench_module

from frolic.config import GroupSpec, RunConfig
from frolic.errors import ChartDomainError, InvalidParameter, VerificationFailure
from frolic.group import so3
from frolic.lie import StructureTable, VerificationReport
from frolic.workbench import FrolicWorkbench


@pytest.fixture
def workbench():
    return FrolicWorkbench(RunConfig(trials=3, seed=1))


def test_group_accepts_every_spec_form(workbench):
    assert workbench.group("so3").name == "so3"
    assert workbench.group('{"group": "gl", "n": 2}').name == "gl(2)"
    assert workbench.group(GroupSpec("additive", {"n": 3})).lie_dim == 3
    built = so3()
    assert workbench.group(built) is built


def test_group_failure_is_logged(workbench, caplog):
    with caplog.at_level(logging.ERROR, logger="frolic"):
        with pytest.raises(InvalidParameter):
            workbench.group("e8")
    assert "Failed to build group e8" in caplog.text


def test_bracket(workbench):
    lv = workbench.bracket("so3", [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert np.allclose(lv.coords, [0.0, 0.0, 1.0], atol=1e-12)
    lv = workbench.bracket("heisenberg3", [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert lv.to_list() == pytest.approx([0.0, 0.0, 1.0], abs=1e-14)


def test_bracket_checks_dimensions(workbench):
    with pytest.raises(InvalidParameter) as excinfo:
        workbench.bracket("so3", [1.0, 0.0], [0.0, 1.0, 0.0])
    assert "lie_dim 3" in str(excinfo.value)


def test_bracket_domain_errors_propagate(workbench, mocker, caplog):
    mocker.patch("frolic.workbench.bracket", side_effect=ChartDomainError("outside the chart"))
    with caplog.at_level(logging.ERROR, logger="frolic"):
        with pytest.raises(ChartDomainError):
            workbench.bracket("sl2", [1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    assert "Failed to compute the bracket" in caplog.text


def test_structure_constants(workbench):
    table = workbench.structure_constants("heisenberg3")
    assert [(i, j, k) for i, j, k, _ in table.rows()] == [(0, 1, 2), (1, 0, 2)]


def test_structure_constants_must_be_antisymmetric(workbench, mocker):
    broken = StructureTable("so3", 1, np.ones((1, 1, 1)))
    mocker.patch("frolic.workbench.structure_constants", return_value=broken)
    with pytest.raises(VerificationFailure) as excinfo:
        workbench.structure_constants("so3")
    assert "antisymmetry" in str(excinfo.value)


def test_verify_uses_the_configured_run(workbench, mocker):
    spy = mocker.spy(workbench_module, "run_suite")
    report = workbench.verify("so3", "oracle")
    assert report.passed
    assert report.to_dict()["trials"] == 3
    assert report.seed == 1
    args = spy.call_args.args
    assert args[0] == "oracle"
    assert args[2:] == (3, 1e-8, 1)


def test_verify_warns_about_failing_suites(workbench, mocker, caplog):
    failed = VerificationReport("comm", "so3", 3, 1e-3, False, 1)
    mocker.patch("frolic.workbench.run_suite", return_value=failed)
    with caplog.at_level(logging.WARNING, logger="frolic"):
        report = workbench.verify("so3", "comm")
    assert report is failed
    assert "Suite comm on so3 failed" in caplog.text


def test_list_builtins(workbench):
    listing = workbench.list_builtins()
    assert listing["groups"]["so3"] == {"params": [], "lie_dim": "3"}
    assert listing["spaces"]["euclidean"] == ["n"]
