"""Fast optimal control: reach a target share as soon and as cheaply as possible.

The optimum is a constant control.  With linear effort cost it is always
full power; with quadratic cost an interior level can win when effort is
expensive relative to time.  Every solution carries the terminal-time
boundary residual as a diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnreachableTargetError
from .params import ModelParams

LINEAR_BANG = "linear-bang"
QUADRATIC_INTERIOR = "quadratic-interior"
QUADRATIC_BANG = "quadratic-bang"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FastProblem:
    i0: float
    i_e: float
    params: ModelParams
    cost_shape: str = "linear"

    def __post_init__(self) -> None:
        if not 0.0 < self.i0 < 1.0 or not 0.0 < self.i_e < 1.0:
            raise ValueError("i0 and i_e must lie strictly inside (0, 1)")
        if self.i_e < self.i0:
            raise ValueError(f"target i_e={self.i_e} below start i0={self.i0}")
        if self.cost_shape not in ("linear", "quadratic"):
            raise ValueError(f"cost_shape must be 'linear' or 'quadratic', "
                             f"got {self.cost_shape!r}")

    @property
    def log_odds_gap(self) -> float:
        return math.log(self.i_e / (1.0 - self.i_e)
                        * (1.0 - self.i0) / self.i0)


@dataclass(frozen=True)
class FastControlSolution:
    control: float
    hitting_time: float
    case_tag: str
    boundary_residual: float

    def __post_init__(self) -> None:
        if not 0.0 < self.control <= 1.0:
            raise ValueError("control must lie in (0, 1]")
        if self.hitting_time < 0.0:
            raise ValueError("hitting_time must be non-negative")


def net_rate(u: float, params: ModelParams) -> float:
    """Drift coefficient ``b + (a - b) u - alpha_R`` under constant control."""
    return params.b + params.spread * u - params.alpha_R


def hitting_time(u: float, problem: FastProblem) -> float:
    """First time the trajectory under constant ``u`` reaches ``i_e``."""
    if problem.i_e == problem.i0:
        return 0.0
    r = net_rate(u, problem.params)
    if r <= 0.0:
        raise UnreachableTargetError(
            f"net rate {r:.6g} under control {u} never lifts the state "
            f"from {problem.i0} to {problem.i_e}")
    return problem.log_odds_gap / r


def _require_reachable(problem: FastProblem) -> None:
    if problem.params.a <= problem.params.alpha_R:
        raise UnreachableTargetError(
            f"a={problem.params.a} <= alpha_R={problem.params.alpha_R}: "
            f"no admissible control reaches the target")


def _linear_residual(params: ModelParams) -> float:
    # full-power case: the switching value lambda + q (a-b) i (1-i) is the
    # negative constant (a-b)/(a-alpha_R) * ((b-alpha_R) lam/(a-b) - 1)
    s = (params.spread / (params.a - params.alpha_R)
         * ((params.b - params.alpha_R) * params.lam / params.spread - 1.0))
    return s + (params.b - params.alpha_R) / params.spread * (s - params.lam) + 1.0


def _quadratic_residual(d: float, pi: float, params: ModelParams) -> float:
    return (params.lam * pi * pi + d * pi
            + (params.b - params.alpha_R) / params.spread * d + 1.0)


def interior_case(params: ModelParams) -> bool:
    """Case test for the quadratic problem.  The companion condition
    ``a - b > 2 (alpha_R - b)`` is evaluated first: it implies the threshold
    denominator ``a + b - 2 alpha_R`` is positive."""
    if not params.spread > 2.0 * (params.alpha_R - params.b):
        return False
    return params.lam >= params.spread / (params.a + params.b
                                          - 2.0 * params.alpha_R)


def u_star(params: ModelParams) -> float:
    """Interior optimum of the quadratic problem."""
    m = (params.alpha_R - params.b) / params.spread
    return m + math.sqrt(m * m + 1.0 / params.lam)


def solve_linear(problem: FastProblem) -> FastControlSolution:
    """Linear effort cost: full power, for any lam."""
    _require_reachable(problem)
    t1 = hitting_time(1.0, problem)
    return FastControlSolution(control=1.0, hitting_time=t1,
                               case_tag=LINEAR_BANG,
                               boundary_residual=_linear_residual(problem.params))


def solve_quadratic(problem: FastProblem) -> FastControlSolution:
    """Quadratic effort cost: interior level when effort is expensive and
    the attacker is weak enough, otherwise full power."""
    _require_reachable(problem)
    p = problem.params
    if interior_case(p):
        u = u_star(p)
        beta = (p.b - p.alpha_R) * p.lam / p.spread
        d = 2.0 * beta - math.sqrt(4.0 * beta * beta + 4.0 * p.lam)
        return FastControlSolution(control=u,
                                   hitting_time=hitting_time(u, problem),
                                   case_tag=QUADRATIC_INTERIOR,
                                   boundary_residual=_quadratic_residual(d, u, p))
    d = -p.spread * (p.lam + 1.0) / (p.a - p.alpha_R)
    return FastControlSolution(control=1.0,
                               hitting_time=hitting_time(1.0, problem),
                               case_tag=QUADRATIC_BANG,
                               boundary_residual=_quadratic_residual(d, 1.0, p))


def solve(problem: FastProblem) -> FastControlSolution:
    if problem.cost_shape == "linear":
        return solve_linear(problem)
    return solve_quadratic(problem)


def constant_objective(u: float, problem: FastProblem) -> float:
    """Time-plus-effort cost of holding ``u`` until the target is hit."""
    t = hitting_time(u, problem)
    h = u if problem.cost_shape == "linear" else u * u
    return t * (1.0 + problem.params.lam * h)


def brute_force_constant_minimizer(problem: FastProblem,
                                   grid_size: int = 2001,
                                   tol: float = 1e-6) -> tuple[float, float]:
    """Grid-then-golden-section oracle over constant controls.

    Searches ``(u_min, 1]`` where ``u_min`` is the infimum of reachable
    controls; certifies the closed-form solutions independently.
    """
    _require_reachable(problem)
    p = problem.params
    u_min = max(0.0, (p.alpha_R - p.b) / p.spread)
    if u_min >= 1.0:
        raise UnreachableTargetError("empty reachable control set")
    grid = np.linspace(u_min, 1.0, grid_size + 1)[1:]
    costs = [constant_objective(u, problem) for u in grid]
    k = int(np.argmin(costs))
    lo = grid[max(0, k - 1)]
    hi = grid[min(len(grid) - 1, k + 1)]
    u_best = _golden_section(lambda u: constant_objective(u, problem),
                             lo, hi, tol)
    cands = [(constant_objective(u, problem), u) for u in (u_best, grid[k], 1.0)]
    j_best, u_best = min(cands)
    return u_best, j_best


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def boundary_condition_check(solution: FastControlSolution,
                             problem: FastProblem) -> float:
    """Terminal-time residual ``H_F + 1``; zero for a correct case choice."""
    p = problem.params
    if solution.case_tag == LINEAR_BANG:
        return _linear_residual(p)
    if solution.case_tag == QUADRATIC_INTERIOR:
        beta = (p.b - p.alpha_R) * p.lam / p.spread
        d = 2.0 * beta - math.sqrt(4.0 * beta * beta + 4.0 * p.lam)
        return _quadratic_residual(d, solution.control, p)
    d = -p.spread * (p.lam + 1.0) / (p.a - p.alpha_R)
    return _quadratic_residual(d, solution.control, p)
