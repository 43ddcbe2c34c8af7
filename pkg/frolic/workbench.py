from typing import Any, Dict, Optional, Sequence, Union

from frolic.config import GroupSpec, RunConfig
from frolic.errors import FrolicError, InvalidParameter, VerificationFailure
from frolic.group import FrolicherGroupDescriptor, builtin_group, group_names
from frolic.lie import (
    LieVector,
    StructureTable,
    VerificationReport,
    bracket,
    coordinates_to_tangent,
    run_suite,
    structure_constants,
)
from frolic.log import get_logger
from frolic.space import space_names

logger = get_logger(__name__)

ANTISYMMETRY_TOL = 1e-10

GroupLike = Union[GroupSpec, FrolicherGroupDescriptor, str]


class FrolicWorkbench:
    """
    Entry point for computing brackets and running verification suites on
    registered groups.
    """

    def __init__(self, config: Optional[RunConfig] = None):
        """
        :param config: Seed, trial count, tolerance and output format; defaults to RunConfig().
        """
        self.config = RunConfig() if config is None else config

    def group(self, spec: GroupLike) -> FrolicherGroupDescriptor:
        """
        Builds the group named by ``spec``.

        :param spec: A GroupSpec, a registered name, or an already built descriptor.
        :return: The group descriptor.
        """
        if isinstance(spec, FrolicherGroupDescriptor):
            return spec
        if isinstance(spec, str):
            spec = GroupSpec.parse(spec)
        try:
            return builtin_group(spec.kind, **spec.params)
        except FrolicError as e:
            logger.error(f"Failed to build group {spec.kind} with {spec.params}: {e}")
            raise

    def bracket(self, spec: GroupLike, v: Sequence[float], w: Sequence[float]) -> LieVector:
        """
        Bracket of the chart-line vectors with coordinates v and w.

        :param spec: The group.
        :param v: Chart coordinates of the first vector, length lie_dim.
        :param w: Chart coordinates of the second vector, length lie_dim.
        :return: Coordinates of [v, w].
        """
        group = self.group(spec)
        try:
            for label, coords in (("v", v), ("w", w)):
                if len(coords) != group.lie_dim:
                    raise InvalidParameter(
                        f"{label} has {len(coords)} coordinates, {group.name} has lie_dim {group.lie_dim}"
                    )
            return bracket(group, coordinates_to_tangent(group, v), coordinates_to_tangent(group, w))
        except FrolicError as e:
            logger.error(f"Failed to compute the bracket of {v} and {w} in {group.name}: {e}")
            raise

    def structure_constants(self, spec: GroupLike) -> StructureTable:
        """
        Structure constants in the identity chart, checked for antisymmetry.

        :raises VerificationFailure: If the table is not antisymmetric.
        """
        group = self.group(spec)
        try:
            table = structure_constants(group)
            deviation = table.antisymmetry_deviation()
            if deviation > ANTISYMMETRY_TOL:
                raise VerificationFailure(
                    f"structure constants of {group.name} violate antisymmetry by {deviation:.3e}"
                )
            return table
        except FrolicError as e:
            logger.error(f"Failed to compute structure constants of {group.name}: {e}")
            raise

    def verify(self, spec: GroupLike, suite: str) -> VerificationReport:
        """
        Runs a verification suite with the configured seed, trials and tolerance.

        A failing suite is returned as a report with ``passed`` False, not raised.
        """
        group = self.group(spec)
        config = self.config
        try:
            report = run_suite(suite, group, config.trials, config.tol, config.seed)
        except FrolicError as e:
            logger.error(f"Failed to run suite {suite} on {group.name}: {e}")
            raise
        if not report.passed:
            logger.warning(
                f"Suite {suite} on {group.name} failed: worst deviation {report.worst_abs_dev:.3e}"
            )
        return report

    def list_builtins(self) -> Dict[str, Any]:
        """Registered groups with lie_dim and parameters, and registered spaces with parameters."""
        return {
            "groups": group_names(),
            "spaces": {name: list(params) for name, params in space_names().items()},
        }
