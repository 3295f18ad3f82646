"""Infinite-horizon optimal defense against a fixed-power attacker.

Builds the bang-bang/singular feedback law from the roots of
``F_B(i) = -i (1 - i) (a - b) fB_slope - k_B z``, classifies long-run
outcomes, exposes costate/switching diagnostics, and certifies optimality
with a brute-force policy-grid oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import dynamics, kernels
from .errors import InadmissibleSingularError
from .outcomes import Outcome, predict_outcome
from .params import DEFAULT_STEP, EPS_ROOT, EPS_TAIL, ModelParams
from .policy import FeedbackPolicy

TWO_ROOTS = "two-roots"
SINGLE_ROOT = "single-root"
NO_ROOT = "no-root"


@dataclass(frozen=True)
class RootPair:
    kind: str
    i1: float | None = None
    i2: float | None = None

    def __post_init__(self) -> None:
        if self.kind == TWO_ROOTS:
            if self.i1 is None or self.i2 is None or not self.i1 < self.i2:
                raise ValueError("two-roots requires i1 < i2")
        elif self.kind == SINGLE_ROOT:
            if self.i1 is None or self.i2 != self.i1:
                raise ValueError("single-root requires i1 == i2")
        elif self.kind != NO_ROOT:
            raise ValueError(f"unknown root kind {self.kind!r}")


@dataclass(frozen=True)
class SwitchingDiagnostics:
    p: float
    switching: float
    hamiltonian: float


def eval_F_B(i_B: float, params: ModelParams) -> float:
    """Sign function governing the defender's switching structure."""
    return (-i_B * (1.0 - i_B) * params.spread * params.fB_slope
            - params.k_B * params.z)


def bisect(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Plain bisection; kept deliberately simple as the cross-check side."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError("bisect requires a sign change on [lo, hi]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _root_pair(c: float) -> RootPair:
    """Roots of ``i (1 - i) = c`` on [0, 1]."""
    disc = 1.0 - 4.0 * c
    if disc > 0.0:
        s = math.sqrt(disc)
        return RootPair(TWO_ROOTS, 0.5 * (1.0 - s), 0.5 * (1.0 + s))
    if disc == 0.0:
        return RootPair(SINGLE_ROOT, 0.5, 0.5)
    return RootPair(NO_ROOT)


def roots_F_B(params: ModelParams) -> RootPair:
    """Closed-form roots of ``F_B = 0``; two-roots iff
    ``k_B z < |fB_slope| (a - b) / 4``."""
    return _root_pair(params.k_B * params.z / (abs(params.fB_slope) * params.spread))


def roots_by_bisection(params: ModelParams, tol: float = 1e-12) -> RootPair:
    """Independent root computation for cross-checking the closed form."""
    f = lambda x: eval_F_B(x, params)
    peak = f(0.5)
    if peak < 0.0:
        return RootPair(NO_ROOT)
    if peak == 0.0:
        return RootPair(SINGLE_ROOT, 0.5, 0.5)
    lo = bisect(f, 0.0, 0.5, tol) if f(0.0) < 0.0 else 0.0
    hi = bisect(f, 0.5, 1.0, tol) if f(1.0) < 0.0 else 1.0
    return RootPair(TWO_ROOTS, lo, hi)


def singular_control(params: ModelParams) -> float:
    """Interior control holding the state fixed: ``(alpha_R - b)/(a - b)``,
    i.e. the defender exactly matches the attacker's power."""
    if not params.b <= params.alpha_R <= params.a:
        raise InadmissibleSingularError(
            f"singular control (alpha_R - b)/(a - b) = "
            f"{(params.alpha_R - params.b) / params.spread:.6g} "
            f"is outside [0, 1] (alpha_R={params.alpha_R}, "
            f"b={params.b}, a={params.a})")
    return (params.alpha_R - params.b) / params.spread


def dominance_regime(params: ModelParams) -> str | None:
    """Dominance classification when the attacker's fixed power leaves the
    open control interval; None in the interior case the feedback law
    assumes."""
    if params.alpha_R <= params.b:
        return "defender-dominant"
    if params.alpha_R >= params.a:
        return "attacker-dominant"
    return None


def optimal_policy(params: ModelParams) -> FeedbackPolicy:
    """Feedback law minimizing the discounted infinite-horizon cost.

    Two interior roots give the five-region structure 0 / u_B / 1 / u_B / 0;
    a single root degenerates to 0 everywhere except the singular point; no
    root (control too expensive) gives identically 0.  A zero control cost
    gives identically 1.
    """
    roots = roots_F_B(params)
    if roots.kind == NO_ROOT:
        return FeedbackPolicy.constant(0.0)
    if roots.kind == TWO_ROOTS and roots.i1 == 0.0:
        # k_B z = 0: control is free, full power is optimal everywhere
        return FeedbackPolicy.constant(1.0)
    dom = dominance_regime(params)
    if dom is not None:
        raise InadmissibleSingularError(
            f"{dom} regime (alpha_R={params.alpha_R} outside "
            f"({params.b}, {params.a})): the interior feedback law does "
            f"not apply")
    u = singular_control(params)
    if roots.kind == SINGLE_ROOT:
        return FeedbackPolicy(edges=(roots.i1,), values=(0.0, 0.0),
                              edge_values=(u,), singular=(True,))
    return FeedbackPolicy(edges=(roots.i1, roots.i2), values=(0.0, 1.0, 0.0),
                          edge_values=(u, u), singular=(True, True))


def limit_outcome(i0: float, params: ModelParams) -> Outcome:
    """Long-run state under the optimal feedback law."""
    return predict_outcome(optimal_policy(params), None, params, i0)


def switching_diagnostics(i_B: float, params: ModelParams,
                          pi_B: float, step: float = DEFAULT_STEP,
                          eps_tail: float = EPS_TAIL) -> SwitchingDiagnostics:
    """Costate, switching-function and Hamiltonian values at ``i_B``.

    At a singular state the costate is the closed form
    ``-k_B / (i (1 - i) (a - b))``; elsewhere it is obtained by integrating
    the adjoint equation backward (terminal value 0 at the cost horizon)
    along the closed-loop optimal trajectory.
    """
    if not 0.0 < i_B < 1.0:
        raise ValueError(f"i_B must lie strictly inside (0, 1), got {i_B}")
    policy = optimal_policy(params)
    w = i_B * (1.0 - i_B) * params.spread

    singular_here = any(s and abs(i_B - e) < EPS_ROOT
                        for e, s in zip(policy.edges, policy.singular))
    if singular_here:
        p = -params.k_B / w
    else:
        p = _adjoint_at_start(i_B, params, policy, step, eps_tail)
    switching = params.k_B + p * w
    alpha_b = params.power(pi_B)
    hamiltonian = (params.f_B(i_B) + params.k_B * pi_B
                   + p * (alpha_b - params.alpha_R) * i_B * (1.0 - i_B))
    return SwitchingDiagnostics(p=p, switching=switching, hamiltonian=hamiltonian)


def _adjoint_at_start(i_B: float, params: ModelParams, policy: FeedbackPolicy,
                      step: float, eps_tail: float) -> float:
    t_max = dynamics.cost_horizon(params, eps_tail)
    n = int(math.ceil(t_max / step))
    args = dynamics.kernel_policy_args(policy, None, params)
    _, i_path, _, _, _ = kernels.simulate_path(
        i_B, step, n, *args, params.z, 1.0, params.fB_slope, params.k_B,
        True, EPS_ROOT)

    z = params.z
    slope = params.fB_slope
    alpha_r = params.alpha_R

    def rhs(p: float, x: float) -> float:
        alpha_b = params.power(policy(x))
        return -slope + p * (z - (alpha_b - alpha_r) * (1.0 - 2.0 * x))

    # Terminal condition.  Once the path parks on a singular arc the costate
    # is the closed form -k_B / (i (1 - i) (a - b)); integrating backward
    # through the discrete chattering there instead would bias the result.
    # Otherwise the transversality condition gives 0 at the horizon.
    band = step * params.spread
    p = 0.0
    k_start = n
    sing_edges = [e for e, s in zip(policy.edges, policy.singular) if s]
    for k in range(n + 1):
        hit = next((e for e in sing_edges if abs(i_path[k] - e) <= band), None)
        if hit is not None:
            p = -params.k_B / (hit * (1.0 - hit) * params.spread)
            k_start = k
            break
    h = -step
    for k in range(k_start - 1, -1, -1):
        x_hi = i_path[k + 1]
        x_mid = 0.5 * (i_path[k] + i_path[k + 1])
        x_lo = i_path[k]
        k1 = rhs(p, x_hi)
        k2 = rhs(p + 0.5 * h * k1, x_mid)
        k3 = rhs(p + 0.5 * h * k2, x_mid)
        k4 = rhs(p + h * k3, x_lo)
        p += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return p


def brute_force_best_policy(params: ModelParams, i0: float,
                            n_constant: int = 101, n_threshold: int = 20,
                            step: float = DEFAULT_STEP
                            ) -> tuple[FeedbackPolicy, float]:
    """Exhaustive oracle over constants and two-threshold bang policies.

    The candidate family contains the optimal-policy structure by
    construction (thresholds bracketing the roots), so the feedback law of
    the theory must not lose to any candidate beyond quadrature error.
    """
    candidates = [FeedbackPolicy.constant(u)
                  for u in np.linspace(0.0, 1.0, n_constant)]
    thetas = np.linspace(0.0, 1.0, n_threshold + 2)[1:-1]
    candidates.extend(FeedbackPolicy.two_threshold(t1, t2)
                      for t1, t2 in combinations(thetas, 2))
    best_policy, best_cost = None, math.inf
    for cand in candidates:
        cost = dynamics.discounted_cost(cand, None, params, i0, "B", step=step)
        if cost < best_cost:
            best_policy, best_cost = cand, cost
    return best_policy, best_cost
