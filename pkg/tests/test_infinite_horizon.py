import math

import pytest

from acdopt import InadmissibleSingularError, ModelParams
from acdopt.infinite_horizon import (NO_ROOT, SINGLE_ROOT, TWO_ROOTS,
                                     RootPair, bisect,
                                     brute_force_best_policy,
                                     dominance_regime, eval_F_B,
                                     limit_outcome, optimal_policy,
                                     roots_by_bisection, roots_F_B,
                                     singular_control, switching_diagnostics)
from acdopt import dynamics
from acdopt.outcomes import COLLAPSES, CONVERGES, STATIC


def test_root_pair_invariants():
    with pytest.raises(ValueError):
        RootPair(TWO_ROOTS, 0.6, 0.4)
    with pytest.raises(ValueError):
        RootPair(SINGLE_ROOT, 0.5, 0.6)
    with pytest.raises(ValueError):
        RootPair("other")


def test_bisect_simple():
    r = bisect(lambda x: x * x - 2.0, 0.0, 2.0)
    assert r == pytest.approx(math.sqrt(2.0), abs=1e-11)
    with pytest.raises(ValueError):
        bisect(lambda x: x * x + 1.0, 0.0, 1.0)


def test_two_roots_closed_form(two_root_params):
    r = roots_F_B(two_root_params)
    assert r.kind == TWO_ROOTS
    # k_B z / (a-b) = 1/8: roots (1 -+ sqrt(1/2)) / 2
    s = math.sqrt(0.5)
    assert r.i1 == pytest.approx((1 - s) / 2, abs=1e-15)
    assert r.i2 == pytest.approx((1 + s) / 2, abs=1e-15)
    assert abs(eval_F_B(r.i1, two_root_params)) <= 1e-12
    assert abs(eval_F_B(r.i2, two_root_params)) <= 1e-12


def test_single_root_exactly_half():
    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.5)  # k_B z = 1/4
    r = roots_F_B(p)
    assert r.kind == SINGLE_ROOT
    assert r.i1 == 0.5 and r.i2 == 0.5


def test_no_root():
    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=1.0, k_B=0.3)
    assert roots_F_B(p).kind == NO_ROOT


def test_bisection_agrees_with_closed_form(two_root_params):
    r = roots_F_B(two_root_params)
    rb = roots_by_bisection(two_root_params)
    assert rb.kind == TWO_ROOTS
    assert abs(r.i1 - rb.i1) <= 1e-10
    assert abs(r.i2 - rb.i2) <= 1e-10


def test_roots_respect_cost_slope_scaling():
    # doubling |fB_slope| halves the effective cost ratio
    p1 = ModelParams(a=1.0, b=0.0, z=0.5, k_B=0.25, fB_slope=-1.0)
    p2 = ModelParams(a=1.0, b=0.0, z=0.5, k_B=0.5, fB_slope=-2.0)
    r1, r2 = roots_F_B(p1), roots_F_B(p2)
    assert r1.i1 == pytest.approx(r2.i1) and r1.i2 == pytest.approx(r2.i2)


def test_singular_control_value(two_root_params):
    assert singular_control(two_root_params) == pytest.approx(0.5)


def test_singular_control_inadmissible():
    p = ModelParams(a=0.8, b=0.2, alpha_R=0.9, z=0.5, k_B=0.05)
    with pytest.raises(InadmissibleSingularError):
        singular_control(p)


def test_dominance_regime():
    assert dominance_regime(ModelParams(a=0.8, b=0.2, alpha_R=0.1)) == "defender-dominant"
    assert dominance_regime(ModelParams(a=0.8, b=0.2, alpha_R=0.9)) == "attacker-dominant"
    assert dominance_regime(ModelParams(a=0.8, b=0.2, alpha_R=0.5)) is None


def test_optimal_policy_five_regions(two_root_params):
    pol = optimal_policy(two_root_params)
    r = roots_F_B(two_root_params)
    u = singular_control(two_root_params)
    assert pol(r.i1 / 2) == 0.0
    assert pol(r.i1) == u
    assert pol((r.i1 + r.i2) / 2) == 1.0
    assert pol(r.i2) == u
    assert pol((r.i2 + 1.0) / 2) == 0.0


def test_optimal_policy_single_root():
    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.5)
    pol = optimal_policy(p)
    assert pol(0.3) == 0.0
    assert pol(0.5) == pytest.approx(0.5)
    assert pol(0.7) == 0.0


def test_optimal_policy_no_root_is_zero():
    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=1.0, k_B=0.3)
    pol = optimal_policy(p)
    assert pol(0.2) == 0.0 and pol(0.8) == 0.0


def test_optimal_policy_free_control_is_one():
    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.0)
    pol = optimal_policy(p)
    assert pol(0.2) == 1.0 and pol(0.8) == 1.0


def test_optimal_policy_dominant_attacker_raises():
    p = ModelParams(a=0.8, b=0.2, alpha_R=0.9, z=0.5, k_B=0.01)
    with pytest.raises(InadmissibleSingularError):
        optimal_policy(p)


def test_limit_outcomes(two_root_params):
    p = two_root_params
    r = roots_F_B(p)
    below = limit_outcome(r.i1 / 2, p)
    assert below.kind == COLLAPSES
    inside = limit_outcome(0.5, p)
    assert inside.kind == CONVERGES and inside.target == pytest.approx(r.i2)
    above = limit_outcome((r.i2 + 1) / 2, p)
    assert above.kind == CONVERGES and above.target == pytest.approx(r.i2)
    at_root = limit_outcome(r.i1, p)
    assert at_root.kind == STATIC


def test_limit_outcomes_match_simulation(two_root_params):
    p = two_root_params
    r = roots_F_B(p)
    pol = optimal_policy(p)
    for i0 in (0.05, 0.3, 0.95):
        out = limit_outcome(i0, p)
        end = dynamics.integrate(pol, None, p, i0, 200.0).final_state
        target = out.target if out.kind in (CONVERGES, STATIC) else 0.0
        assert end == pytest.approx(target, abs=1e-4)


def test_switching_function_vanishes_on_singular_arc(two_root_params):
    p = two_root_params
    r = roots_F_B(p)
    for root in (r.i1, r.i2):
        diag = switching_diagnostics(root, p, singular_control(p))
        assert abs(diag.switching) <= 1e-12
        assert diag.p == pytest.approx(-p.k_B / (root * (1 - root) * p.spread))


def test_switching_sign_selects_bang(two_root_params):
    p = two_root_params
    r = roots_F_B(p)
    mid = (r.i1 + r.i2) / 2
    assert switching_diagnostics(mid, p, 1.0).switching < 0.0   # full power
    above = (r.i2 + 1) / 2
    assert switching_diagnostics(above, p, 0.0).switching > 0.0  # idle


def test_brute_force_never_beats_policy(two_root_params):
    p = two_root_params
    pol = optimal_policy(p)
    for i0 in (0.3, 0.9):
        _, best = brute_force_best_policy(p, i0, n_constant=21,
                                          n_threshold=8, step=5e-3)
        cost = dynamics.discounted_cost(pol, None, p, i0, step=5e-3)
        assert cost <= best + 1e-4
