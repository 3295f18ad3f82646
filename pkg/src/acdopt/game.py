"""Equilibrium strategy pairs for a strategic attacker and defender.

Both players draw power from ``[b, a]``.  The defender's switching structure
comes from ``F_B`` (see ``infinite_horizon``); the attacker's from
``F_R(i) = i (1 - i) (a - b) fR_slope - k_R z``.  The nine regime rows
pair each player's root regime (two roots / one root / none) and fix the
interval-boundary conventions of the published case table exactly; the
equilibrium property is certified numerically by constant-deviation sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics
from .infinite_horizon import (NO_ROOT, SINGLE_ROOT, TWO_ROOTS, RootPair,
                               _root_pair, roots_F_B)
from .outcomes import Outcome, predict_outcome
from .params import DEFAULT_STEP, EPS_TAIL, ModelParams, Trajectory
from .policy import FeedbackPolicy


@dataclass(frozen=True)
class NashProfile:
    defender_policy: FeedbackPolicy
    attacker_policy: FeedbackPolicy
    row: int
    regime: str
    roots_B: RootPair
    roots_R: RootPair
    predicted_outcome: Outcome


@dataclass(frozen=True)
class BestResponseReport:
    defender_baseline: float
    attacker_baseline: float
    defender_best_deviation: float
    defender_deviation_cost: float
    attacker_best_deviation: float
    attacker_deviation_cost: float
    tolerance: float

    @property
    def defender_improvement(self) -> float:
        return self.defender_baseline - self.defender_deviation_cost

    @property
    def attacker_improvement(self) -> float:
        return self.attacker_baseline - self.attacker_deviation_cost

    @property
    def passed(self) -> bool:
        return (self.defender_improvement <= self.tolerance
                and self.attacker_improvement <= self.tolerance)


def eval_F_R(i_B: float, params: ModelParams) -> float:
    """Sign function governing the attacker's switching structure."""
    return (i_B * (1.0 - i_B) * params.spread * params.fR_slope
            - params.k_R * params.z)


def roots_F_R(params: ModelParams) -> RootPair:
    """Closed-form roots of ``F_R = 0``; mirrors the defender's equation
    with ``k_R`` and the attacker cost slope."""
    return _root_pair(params.k_R * params.z / (params.fR_slope * params.spread))


_ROW_OF_REGIMES = {
    (TWO_ROOTS, TWO_ROOTS): 1, (TWO_ROOTS, SINGLE_ROOT): 2, (TWO_ROOTS, NO_ROOT): 3,
    (SINGLE_ROOT, TWO_ROOTS): 4, (SINGLE_ROOT, SINGLE_ROOT): 5, (SINGLE_ROOT, NO_ROOT): 6,
    (NO_ROOT, TWO_ROOTS): 7, (NO_ROOT, SINGLE_ROOT): 8, (NO_ROOT, NO_ROOT): 9,
}

_ZERO = FeedbackPolicy.constant(0.0)


def _band_closed(lo: float, hi: float) -> FeedbackPolicy:
    """0 below, 1 on the closed band [lo, hi], 0 above."""
    return FeedbackPolicy(edges=(lo, hi), values=(0.0, 1.0, 0.0),
                          edge_values=(1.0, 1.0), singular=(False, False))


def _band_open(lo: float, hi: float) -> FeedbackPolicy:
    """0 up to and including lo, 1 strictly inside, 0 from hi on."""
    return FeedbackPolicy(edges=(lo, hi), values=(0.0, 1.0, 0.0),
                          edge_values=(0.0, 0.0), singular=(False, False))


def _spike(at: float, value: float = 1.0) -> FeedbackPolicy:
    """0 everywhere except ``value`` exactly at ``at``."""
    return FeedbackPolicy(edges=(at,), values=(0.0, 0.0),
                          edge_values=(value,), singular=(False,))


def table_strategies(params: ModelParams) -> tuple[FeedbackPolicy, FeedbackPolicy,
                                                   int, RootPair, RootPair]:
    """The published strategy pair for the current regime row.

    Boundary conventions (open vs closed intervals) are reproduced exactly
    as printed, including the asymmetries between rows.
    """
    rb = roots_F_B(params)
    rr = roots_F_R(params)
    row = _ROW_OF_REGIMES[(rb.kind, rr.kind)]

    if row == 1:
        pol_b = _band_open(rb.i1, rb.i2)
        pol_r = _band_closed(rr.i1, rr.i2)
    elif row == 2:
        pol_b = _band_open(rb.i1, rb.i2)
        pol_r = _spike(rr.i1)
    elif row == 3:
        pol_b = _band_open(rb.i1, rb.i2)
        pol_r = _ZERO
    elif row == 4:
        pol_b = _spike(rb.i1)
        pol_r = _band_open(rr.i1, rr.i2)
    elif row == 5:
        # the printed pair is self-referential at the common root; any
        # common value keeps the state static, 0 minimizes both flow costs
        pol_b = _ZERO
        pol_r = _ZERO
    elif row == 7:
        pol_b = _ZERO
        pol_r = _band_open(rr.i1, rr.i2)
    else:
        pol_b = _ZERO
        pol_r = _ZERO
    return pol_b, pol_r, row, rb, rr


def _regime_label(params: ModelParams, rb: RootPair, rr: RootPair) -> str:
    rel = {TWO_ROOTS: "<", SINGLE_ROOT: "=", NO_ROOT: ">"}
    return (f"k_B*z {rel[rb.kind]} (a-b)/4*|fB'| ; "
            f"k_R*z {rel[rr.kind]} (a-b)/4*fR'")


def nash_profile(params: ModelParams, i_B0: float) -> NashProfile:
    """Strategy pair, regime row and predicted long-run outcome at ``i_B0``."""
    if not 0.0 <= i_B0 <= 1.0:
        raise ValueError(f"i_B0 must lie in [0, 1], got {i_B0}")
    pol_b, pol_r, row, rb, rr = table_strategies(params)
    outcome = predict_outcome(pol_b, pol_r, params, i_B0)
    return NashProfile(defender_policy=pol_b, attacker_policy=pol_r,
                       row=row, regime=_regime_label(params, rb, rr),
                       roots_B=rb, roots_R=rr, predicted_outcome=outcome)


def ordering_check(params: ModelParams) -> str:
    """Interleaving of the two players' root pairs.

    The cheaper player's roots bracket the other's: ``i1 < i3 < i4 < i2``
    when the defender's effective cost is lower, mirrored when higher.
    """
    rb = roots_F_B(params)
    rr = roots_F_R(params)
    if rb.kind != TWO_ROOTS or rr.kind != TWO_ROOTS:
        raise ValueError("ordering check requires both players in the "
                         "two-roots regime")
    c_b = params.k_B * params.z / abs(params.fB_slope)
    c_r = params.k_R * params.z / params.fR_slope
    if c_b < c_r:
        expected = rb.i1 < rr.i1 < rr.i2 < rb.i2
        tag = "i1<i3<i4<i2"
    elif c_b > c_r:
        expected = rr.i1 < rb.i1 < rb.i2 < rr.i2
        tag = "i3<i1<i2<i4"
    else:
        expected = rb.i1 == rr.i1 and rb.i2 == rr.i2
        tag = "i1=i3<i4=i2"
    if not expected:
        raise AssertionError(f"root interleaving violates {tag}: "
                             f"B=({rb.i1}, {rb.i2}) R=({rr.i1}, {rr.i2})")
    return tag


def equilibrium_trajectory(params: ModelParams, i_B0: float, t_end: float,
                           step: float = DEFAULT_STEP) -> Trajectory:
    """Closed-loop path with both players applying their table strategies."""
    pol_b, pol_r, _, _, _ = table_strategies(params)
    return dynamics.integrate(pol_b, pol_r, params, i_B0, t_end, step)


def hamiltonian_pair(i_B: float, pi_B: float, pi_R: float,
                     p1: float, p2: float, params: ModelParams
                     ) -> tuple[float, float]:
    """Literal evaluation of both players' Hamiltonians."""
    alpha_b = params.power(pi_B)
    alpha_r = params.power(pi_R)
    flow = (alpha_b - alpha_r) * i_B * (1.0 - i_B)
    h_b = params.f_B(i_B) + params.k_B * pi_B + p1 * flow
    h_r = params.f_R(i_B) + params.k_R * pi_R + p2 * flow
    return h_b, h_r


def best_response_check(profile: NashProfile, params: ModelParams,
                        i_B0: float, deviation_grid: int = 41,
                        tolerance: float = 1e-4,
                        step: float = DEFAULT_STEP,
                        eps_tail: float = EPS_TAIL) -> BestResponseReport:
    """Unilateral constant-deviation sweep for both players.

    Certification covers constant deviations only; robustness against
    arbitrary feedback deviations is not checked here.
    """
    pol_b = profile.defender_policy
    pol_r = profile.attacker_policy
    base_b = dynamics.discounted_cost(pol_b, pol_r, params, i_B0, "B",
                                      step=step, eps_tail=eps_tail)
    base_r = dynamics.discounted_cost(pol_b, pol_r, params, i_B0, "R",
                                      step=step, eps_tail=eps_tail)
    grid = np.linspace(0.0, 1.0, deviation_grid)

    best_u_b, best_c_b = math.nan, math.inf
    best_u_r, best_c_r = math.nan, math.inf
    for u in grid:
        dev = FeedbackPolicy.constant(float(u))
        c_b = dynamics.discounted_cost(dev, pol_r, params, i_B0, "B",
                                       step=step, eps_tail=eps_tail)
        if c_b < best_c_b:
            best_u_b, best_c_b = float(u), c_b
        c_r = dynamics.discounted_cost(pol_b, dev, params, i_B0, "R",
                                       step=step, eps_tail=eps_tail)
        if c_r < best_c_r:
            best_u_r, best_c_r = float(u), c_r
    return BestResponseReport(defender_baseline=base_b,
                              attacker_baseline=base_r,
                              defender_best_deviation=best_u_b,
                              defender_deviation_cost=best_c_b,
                              attacker_best_deviation=best_u_r,
                              attacker_deviation_cost=best_c_r,
                              tolerance=tolerance)
