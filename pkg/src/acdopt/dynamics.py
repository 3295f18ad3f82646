"""State equation, closed-form solution and cost functionals.

The drift is ``(alpha_B - alpha_R) * i * (1 - i)``: logistic competition for
nodes between the defender's recovery worms and the attacker's malware.
"""

from __future__ import annotations

import math

import numpy as np

from .params import DEFAULT_STEP, EPS_ROOT, EPS_TAIL, ModelParams, Trajectory
from .policy import FeedbackPolicy

_EMPTY_F = np.empty(0, dtype=np.float64)
_EMPTY_U = np.empty(0, dtype=np.uint8)

AttackerSpec = FeedbackPolicy | float | None


def drift(i_B: float, alpha_B: float, alpha_R: float) -> float:
    """Rate of change of the defender share at state ``i_B``."""
    return (alpha_B - alpha_R) * i_B * (1.0 - i_B)


def closed_form_state(t: float, i0: float, alpha_B: float, alpha_R: float) -> float:
    """Logistic solution under constant powers, in odds form.

    With ``w = i0/(1-i0) * exp((alpha_B - alpha_R) * t)`` the state is
    ``w / (1 + w)``.  Evaluated through the log-odds for stability at large
    ``|r t|``.
    """
    if not 0.0 < i0 < 1.0:
        raise ValueError(f"i0 must lie strictly inside (0, 1), got {i0}")
    r = alpha_B - alpha_R
    if r == 0.0:
        return i0
    x = math.log(i0 / (1.0 - i0)) + r * t
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def _coerce_policy(policy) -> FeedbackPolicy:
    if isinstance(policy, FeedbackPolicy):
        return policy
    return FeedbackPolicy.constant(float(policy))


def kernel_policy_args(policy_B, attacker, params: ModelParams):
    """Flatten policies into the positional arguments the kernels take."""
    pol_b = _coerce_policy(policy_B)
    eB, vB, evB, sB = pol_b.as_arrays()
    if isinstance(attacker, FeedbackPolicy):
        eR, vR, evR, sR = attacker.as_arrays()
        strategic = True
        alpha = 0.0
    else:
        alpha = params.alpha_R if attacker is None else float(attacker)
        if not math.isfinite(alpha):
            raise ValueError("attacker power must be finite")
        eR, vR, evR, sR = _EMPTY_F, _EMPTY_F, _EMPTY_F, _EMPTY_U
        strategic = False
    return (params.a, params.b, alpha, strategic,
            eB, vB, evB, sB, eR, vR, evR, sR)


def _cost_coeffs(params: ModelParams, whose: str):
    if whose == "B":
        return 1.0, params.fB_slope, params.k_B, True
    if whose == "R":
        return 0.0, params.fR_slope, params.k_R, False
    raise ValueError(f"whose must be 'B' or 'R', got {whose!r}")


def integrate(policy_B, policy_R: AttackerSpec, params: ModelParams,
              i0: float, t_end: float, step: float = DEFAULT_STEP,
              eps_root: float = EPS_ROOT) -> Trajectory:
    """Fixed-step RK4 path under state feedback.

    ``policy_R`` may be a :class:`FeedbackPolicy` (strategic attacker), a
    fixed power, or None for ``params.alpha_R``.  Controls are re-evaluated
    from the start-of-step state; the state is clamped to ``[0, 1]`` after
    each step.  ``running_cost`` accumulates the defender's discounted cost.
    """
    from . import kernels

    if not (math.isfinite(i0) and math.isfinite(t_end) and math.isfinite(step)):
        raise ValueError("i0, t_end and step must be finite")
    if not 0.0 <= i0 <= 1.0:
        raise ValueError(f"i0 must lie in [0, 1], got {i0}")
    if step <= 0.0 or t_end < 0.0:
        raise ValueError("need step > 0 and t_end >= 0")

    if t_end == 0.0:
        n_steps, h = 0, step
    else:
        # uniform grid landing exactly on t_end
        n_steps = max(1, int(round(t_end / step)))
        h = t_end / n_steps
    a, b, alpha, strategic, *pols = kernel_policy_args(policy_B, policy_R, params)
    c0, c1, k_cost, on_b = _cost_coeffs(params, "B")
    t, i_b, pi_b, pi_r, cost = kernels.simulate_path(
        i0, h, n_steps, a, b, alpha, strategic, *pols,
        params.z, c0, c1, k_cost, on_b, eps_root)
    return Trajectory(t=t, i_B=i_b, pi_B=pi_b,
                      pi_R=pi_r if strategic else None,
                      running_cost=cost, step=h)


def cost_horizon(params: ModelParams, eps_tail: float = EPS_TAIL) -> float:
    """Truncation horizon for the infinite-horizon cost integrals.

    ``T = ln(M / eps_tail) / z`` where ``M = 1 + max(k_B, k_R)`` bounds the
    (linear-cost) integrand, so the discarded tail is below ``eps_tail / z``.
    """
    m = 1.0 + max(params.k_B, params.k_R)
    return math.log(m / eps_tail) / params.z


def discounted_cost(policy_B, attacker: AttackerSpec, params: ModelParams,
                    i0: float, whose: str = "B",
                    step: float = DEFAULT_STEP, eps_tail: float = EPS_TAIL,
                    t_max: float | None = None,
                    eps_root: float = EPS_ROOT) -> float:
    """Discounted running cost of one player along the closed-loop path.

    Defender integrand: ``exp(-z t) * (f_B(i) + k_B * pi_B)``; attacker
    analogue uses ``f_R`` and ``k_R * pi_R``.  The horizon is truncated at
    :func:`cost_horizon` unless ``t_max`` overrides it.
    """
    from . import kernels

    if not 0.0 <= i0 <= 1.0:
        raise ValueError(f"i0 must lie in [0, 1], got {i0}")
    if t_max is None:
        t_max = cost_horizon(params, eps_tail)
    n_steps = max(1, int(math.ceil(t_max / step)))
    a, b, alpha, strategic, *pols = kernel_policy_args(policy_B, attacker, params)
    c0, c1, k_cost, on_b = _cost_coeffs(params, whose)
    _, cost = kernels.final_state_and_cost(
        i0, step, n_steps, a, b, alpha, strategic, *pols,
        params.z, c0, c1, k_cost, on_b, eps_root)
    return cost


def fast_cost(control, T: float, params: ModelParams,
              cost_shape: str = "linear") -> float:
    """Time-plus-effort objective ``T + lam * integral h(pi)``.

    ``control`` is a constant level or a sequence of ``(duration, level)``
    segments covering ``[0, T]``.  ``h`` is the identity for ``linear`` and
    the square for ``quadratic``.
    """
    if T < 0.0:
        raise ValueError(f"T must be non-negative, got {T}")
    if cost_shape == "linear":
        h = lambda u: u
    elif cost_shape == "quadratic":
        h = lambda u: u * u
    else:
        raise ValueError(f"cost_shape must be 'linear' or 'quadratic', got {cost_shape!r}")
    if np.isscalar(control):
        effort = T * h(float(control))
    else:
        effort = sum(d * h(u) for d, u in control)
    return T + params.lam * effort
