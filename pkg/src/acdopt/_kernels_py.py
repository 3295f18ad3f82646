"""Pure-Python integration kernels.

Fallback implementation used when the compiled extension is unavailable.
Signatures mirror ``_speedups`` exactly; see ``kernels`` for the selection
logic and ``benchmarks/bench_kernels.py`` for a speed comparison.

The state equation is ``di/dt = (alpha_B - alpha_R) * i * (1 - i)`` with
piecewise-constant state feedback for one or both players.  Controls are
frozen at the start-of-step state and the running cost
``exp(-z t) * (c0 + c1 * i + k_cost * pi)`` is accumulated with the same
fourth-order Runge-Kutta stages as the state.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "python"


def _eval_policy(x, edges, vals, edge_vals, sing, eps):
    n = len(edges)
    for j in range(n):
        e = edges[j]
        if sing[j]:
            if abs(x - e) < eps:
                return edge_vals[j]
        elif x == e:
            return edge_vals[j]
    k = 0
    while k < n and x > edges[k]:
        k += 1
    return vals[k]


def simulate_path(i0, step, n_steps, a, b, alpha_R_fixed, strategic_R,
                  eB, vB, evB, sB, eR, vR, evR, sR,
                  z, c0, c1, k_cost, cost_on_B, eps):
    """Integrate the closed loop, recording every sample.

    Returns arrays ``(t, i_B, pi_B, pi_R, running_cost)`` of length
    ``n_steps + 1``.  ``pi_R`` is NaN throughout when ``strategic_R`` is
    false.
    """
    t_arr = np.empty(n_steps + 1)
    i_arr = np.empty(n_steps + 1)
    pb_arr = np.empty(n_steps + 1)
    pr_arr = np.empty(n_steps + 1)
    c_arr = np.empty(n_steps + 1)

    eB = list(eB); vB = list(vB); evB = list(evB); sB = list(sB)
    eR = list(eR); vR = list(vR); evR = list(evR); sR = list(sR)

    h = step
    span = a - b
    et = 1.0
    eh2 = math.exp(-z * h / 2.0)
    i = min(max(i0, 0.0), 1.0)
    cost = 0.0
    for k in range(n_steps + 1):
        pi_b = _eval_policy(i, eB, vB, evB, sB, eps)
        if strategic_R:
            pi_r = _eval_policy(i, eR, vR, evR, sR, eps)
            al_r = b + pi_r * span
        else:
            pi_r = math.nan
            al_r = alpha_R_fixed
        t_arr[k] = k * h
        i_arr[k] = i
        pb_arr[k] = pi_b
        pr_arr[k] = pi_r
        c_arr[k] = cost
        if k == n_steps:
            break

        r = b + pi_b * span - al_r
        if cost_on_B:
            pi_sel = pi_b
        elif strategic_R:
            pi_sel = pi_r
        else:
            # implied attacker control level for a fixed attacker power
            pi_sel = (al_r - b) / span
        base = c0 + k_cost * pi_sel

        k1 = r * i * (1.0 - i)
        x2 = i + 0.5 * h * k1
        k2 = r * x2 * (1.0 - x2)
        x3 = i + 0.5 * h * k2
        k3 = r * x3 * (1.0 - x3)
        x4 = i + h * k3
        k4 = r * x4 * (1.0 - x4)

        em = et * eh2
        ee = em * eh2
        g1 = et * (base + c1 * i)
        g2 = em * (base + c1 * x2)
        g3 = em * (base + c1 * x3)
        g4 = ee * (base + c1 * x4)

        i = i + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i < 0.0:
            i = 0.0
        elif i > 1.0:
            i = 1.0
        cost += h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4)
        et = ee
    return t_arr, i_arr, pb_arr, pr_arr, c_arr


def final_state_and_cost(i0, step, n_steps, a, b, alpha_R_fixed, strategic_R,
                         eB, vB, evB, sB, eR, vR, evR, sR,
                         z, c0, c1, k_cost, cost_on_B, eps):
    """Same loop as :func:`simulate_path` without recording; returns
    ``(final_i_B, total_cost)``."""
    eB = list(eB); vB = list(vB); evB = list(evB); sB = list(sB)
    eR = list(eR); vR = list(vR); evR = list(evR); sR = list(sR)

    h = step
    span = a - b
    et = 1.0
    eh2 = math.exp(-z * h / 2.0)
    i = min(max(i0, 0.0), 1.0)
    cost = 0.0
    for _ in range(n_steps):
        pi_b = _eval_policy(i, eB, vB, evB, sB, eps)
        if strategic_R:
            pi_r = _eval_policy(i, eR, vR, evR, sR, eps)
            al_r = b + pi_r * span
        else:
            al_r = alpha_R_fixed
            pi_r = (al_r - b) / span

        r = b + pi_b * span - al_r
        pi_sel = pi_b if cost_on_B else pi_r
        base = c0 + k_cost * pi_sel

        k1 = r * i * (1.0 - i)
        x2 = i + 0.5 * h * k1
        k2 = r * x2 * (1.0 - x2)
        x3 = i + 0.5 * h * k2
        k3 = r * x3 * (1.0 - x3)
        x4 = i + h * k3
        k4 = r * x4 * (1.0 - x4)

        em = et * eh2
        ee = em * eh2
        g1 = et * (base + c1 * i)
        g2 = em * (base + c1 * x2)
        g3 = em * (base + c1 * x3)
        g4 = ee * (base + c1 * x4)

        i = i + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i < 0.0:
            i = 0.0
        elif i > 1.0:
            i = 1.0
        cost += h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4)
        et = ee
    return i, cost
