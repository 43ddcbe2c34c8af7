import numpy as np

from dataclasses import dataclass, field
from typing import Any, Callable

from frolic.errors import InvalidParameter, NotAHomomorphism
from frolic.group.builtins import additive, heisenberg3
from frolic.group.group import FrolicherGroupDescriptor, sample_point
from frolic.group.loop import loop_nodes
from frolic.jet import stack, value
from frolic.log import get_logger
from frolic.smooth import SmoothMap

logger = get_logger(__name__)

HOMOMORPHISM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """A scalar-generic map between registered groups claimed to respect products."""

    source: FrolicherGroupDescriptor = field(repr=False)
    target: FrolicherGroupDescriptor = field(repr=False)
    program: Callable[[Any], Any] = field(repr=False)
    name: str = "alpha"

    def __call__(self, point):
        return self.program(point)

    def as_map(self) -> SmoothMap:
        return SmoothMap(self.source.space.name, self.target.space.name, self.program, self.name)


def identity_homomorphism(group: FrolicherGroupDescriptor) -> GroupHomomorphism:
    return GroupHomomorphism(group, group, lambda x: x, "id")


def conjugation(group: FrolicherGroupDescriptor, h) -> GroupHomomorphism:
    """The inner automorphism x -> h x h⁻¹."""
    h = np.asarray(value(h), dtype=float)
    if not group.space.contains(h):
        raise InvalidParameter(f"{h} is not an element of {group.name}")
    h_inv = np.asarray(value(group.inv(h)), dtype=float)
    mul = group.mul
    return GroupHomomorphism(group, group, lambda x: mul(mul(h, x), h_inv), "conj")


def heisenberg_center_quotient() -> GroupHomomorphism:
    """heisenberg3 -> additive(2), keeping (a12, a23) and forgetting the centre a13."""
    return GroupHomomorphism(
        heisenberg3(), additive(2), lambda x: stack([x[1], x[5]]), "forget-centre"
    )


def loop_evaluation(
    loop: FrolicherGroupDescriptor, node: int, target: FrolicherGroupDescriptor
) -> GroupHomomorphism:
    """Evaluation of a loop at its quadrature angle with index ``node``."""
    count = len(loop_nodes(loop))
    if not 0 <= node < count:
        raise InvalidParameter(f"node {node} outside 0..{count - 1}")
    width = target.space.point_arity
    if loop.space.point_arity != count * width:
        raise InvalidParameter(f"{loop.name} is not a loop group into {target.name}")
    return GroupHomomorphism(
        loop, target, lambda x: x[node * width : (node + 1) * width], f"ev@{node}"
    )


def check_homomorphism(
    alpha: GroupHomomorphism, trials: int = 50, seed: int = 0, tol: float = HOMOMORPHISM_TOL
) -> float:
    """
    Samples alpha(gh) = alpha(g) alpha(h) and alpha(e) = e.

    :return: The worst deviation seen.
    :raises NotAHomomorphism: If a deviation exceeds tol.
    """
    source, target = alpha.source, alpha.target
    worst = float(
        np.max(np.abs(np.asarray(value(alpha(source.identity))) - target.identity), initial=0.0)
    )
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        g, h = sample_point(source, rng), sample_point(source, rng)
        lhs = np.asarray(value(alpha(source.mul(g, h))))
        rhs = np.asarray(value(target.mul(alpha(g), alpha(h))))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    if worst > tol:
        raise NotAHomomorphism(
            f"{alpha.name}: {source.name} -> {target.name} fails the product law by {worst:.3e}"
        )
    logger.debug(f"{alpha.name} respects products up to {worst:.3e}")
    return worst
