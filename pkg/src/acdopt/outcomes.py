"""Long-run outcome classification for state-feedback strategy profiles.

The drift under piecewise-constant feedback has one sign per region, so the
limit of a trajectory is found by walking region boundaries in the direction
of the flow until the push reverses or vanishes (Filippov rest points).
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import ModelParams
from .policy import FeedbackPolicy

CONVERGES = "converges-to"
COLLAPSES = "collapses-to-zero"
STATIC = "static"
OCCUPIES_ALL = "occupies-all"


@dataclass(frozen=True)
class Outcome:
    kind: str
    target: float | None = None

    def __str__(self) -> str:
        if self.kind == CONVERGES:
            return f"{self.kind}({self.target:.6g})"
        return self.kind


def predict_outcome(policy_B: FeedbackPolicy, attacker, params: ModelParams,
                    i0: float) -> Outcome:
    """Limit of the trajectory started at ``i0`` under the given profile.

    ``attacker`` is a :class:`FeedbackPolicy`, a fixed power, or None for
    ``params.alpha_R``.
    """
    if not 0.0 <= i0 <= 1.0:
        raise ValueError(f"i0 must lie in [0, 1], got {i0}")
    if i0 == 0.0 or i0 == 1.0:
        return Outcome(STATIC, i0)

    strategic = isinstance(attacker, FeedbackPolicy)
    if strategic:
        edges = sorted(set(policy_B.edges) | set(attacker.edges))
    else:
        edges = sorted(policy_B.edges)
    alpha_fixed = None if strategic else (
        params.alpha_R if attacker is None else float(attacker))

    def net(x: float) -> float:
        al_b = params.power(policy_B(x))
        al_r = params.power(attacker(x)) if strategic else alpha_fixed
        return al_b - al_r

    def rep_above(e: float) -> float:
        higher = [x for x in edges if x > e]
        return 0.5 * (e + (higher[0] if higher else 1.0))

    def rep_below(e: float) -> float:
        lower = [x for x in edges if x < e]
        return 0.5 * (e + (lower[-1] if lower else 0.0))

    v0 = net(i0)
    if v0 == 0.0:
        return Outcome(STATIC, i0)
    if v0 > 0.0:
        if i0 in edges and net(rep_above(i0)) <= 0.0:
            return Outcome(STATIC, i0)  # pinned: pushed up at i0, down above
        for e in [x for x in edges if x > i0]:
            if net(e) <= 0.0 or net(rep_above(e)) <= 0.0:
                return Outcome(CONVERGES, e)
        return Outcome(OCCUPIES_ALL, 1.0)
    if i0 in edges and net(rep_below(i0)) >= 0.0:
        return Outcome(STATIC, i0)
    for e in reversed([x for x in edges if x < i0]):
        if net(e) >= 0.0 or net(rep_below(e)) >= 0.0:
            return Outcome(CONVERGES, e)
    return Outcome(COLLAPSES, 0.0)
