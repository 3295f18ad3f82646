# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernels.

Hot inner loops for closed-loop RK4 integration and discounted-cost
accumulation.  Must stay numerically identical to ``_kernels_py``; the
parity test suite holds both backends to ~1e-12 agreement.
"""

from libc.math cimport exp, fabs, NAN

import numpy as np

BACKEND_NAME = "cython"


cdef inline double _eval_policy(double x, const double[::1] edges,
                                const double[::1] vals,
                                const double[::1] edge_vals,
                                const unsigned char[::1] sing,
                                double eps) noexcept nogil:
    cdef Py_ssize_t n = edges.shape[0]
    cdef Py_ssize_t j, k
    cdef double e
    for j in range(n):
        e = edges[j]
        if sing[j]:
            if fabs(x - e) < eps:
                return edge_vals[j]
        elif x == e:
            return edge_vals[j]
    k = 0
    while k < n and x > edges[k]:
        k += 1
    return vals[k]


def simulate_path(double i0, double step, Py_ssize_t n_steps,
                  double a, double b, double alpha_R_fixed, bint strategic_R,
                  const double[::1] eB, const double[::1] vB,
                  const double[::1] evB, const unsigned char[::1] sB,
                  const double[::1] eR, const double[::1] vR,
                  const double[::1] evR, const unsigned char[::1] sR,
                  double z, double c0, double c1, double k_cost,
                  bint cost_on_B, double eps):
    """Integrate the closed loop, recording every sample."""
    t_np = np.empty(n_steps + 1)
    i_np = np.empty(n_steps + 1)
    pb_np = np.empty(n_steps + 1)
    pr_np = np.empty(n_steps + 1)
    c_np = np.empty(n_steps + 1)
    cdef double[::1] t_arr = t_np
    cdef double[::1] i_arr = i_np
    cdef double[::1] pb_arr = pb_np
    cdef double[::1] pr_arr = pr_np
    cdef double[::1] c_arr = c_np

    cdef double h = step
    cdef double span = a - b
    cdef double et = 1.0
    cdef double eh2 = exp(-z * h / 2.0)
    cdef double i = i0
    cdef double cost = 0.0
    cdef double pi_b, pi_r, al_r, r, pi_sel, base
    cdef double k1, k2, k3, k4, x2, x3, x4, em, ee, g1, g2, g3, g4
    cdef Py_ssize_t k

    if i < 0.0:
        i = 0.0
    elif i > 1.0:
        i = 1.0

    with nogil:
        for k in range(n_steps + 1):
            pi_b = _eval_policy(i, eB, vB, evB, sB, eps)
            if strategic_R:
                pi_r = _eval_policy(i, eR, vR, evR, sR, eps)
                al_r = b + pi_r * span
            else:
                pi_r = NAN
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
    return t_np, i_np, pb_np, pr_np, c_np


def final_state_and_cost(double i0, double step, Py_ssize_t n_steps,
                         double a, double b, double alpha_R_fixed,
                         bint strategic_R,
                         const double[::1] eB, const double[::1] vB,
                         const double[::1] evB, const unsigned char[::1] sB,
                         const double[::1] eR, const double[::1] vR,
                         const double[::1] evR, const unsigned char[::1] sR,
                         double z, double c0, double c1, double k_cost,
                         bint cost_on_B, double eps):
    """Same loop as :func:`simulate_path` without recording."""
    cdef double h = step
    cdef double span = a - b
    cdef double et = 1.0
    cdef double eh2 = exp(-z * h / 2.0)
    cdef double i = i0
    cdef double cost = 0.0
    cdef double pi_b, pi_r, al_r, r, pi_sel, base
    cdef double k1, k2, k3, k4, x2, x3, x4, em, ee, g1, g2, g3, g4
    cdef Py_ssize_t k

    if i < 0.0:
        i = 0.0
    elif i > 1.0:
        i = 1.0

    with nogil:
        for k in range(n_steps):
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
