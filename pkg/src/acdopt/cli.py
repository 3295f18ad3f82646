"""Batch front end: scenario configs in, trajectories/policies/reports out.

One JSON config schema across all modes, discriminated by ``mode``.  Exit
status: 0 success, 2 config error, 3 precondition violation (unreachable
target, inadmissible singular control, invalid state), 4 verification
failure.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import dynamics, fast_control, game, infinite_horizon, kernels
from .errors import AcdoptError, ConfigError, InadmissibleSingularError, UnreachableTargetError
from .outcomes import Outcome
from .params import DEFAULT_STEP, EPS_TAIL, ModelParams
from .policy import FeedbackPolicy

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_VERIFY = 4

_PARAM_KEYS = ("a", "b", "alpha_R", "z", "k_B", "k_R", "lambda",
               "fB_slope", "fR_slope")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def parse_params(cfg: dict) -> ModelParams:
    raw = cfg.get("params")
    if not isinstance(raw, dict):
        raise ConfigError("config needs a 'params' object")
    unknown = set(raw) - set(_PARAM_KEYS)
    if unknown:
        raise ConfigError(f"unknown params fields: {sorted(unknown)}")
    kwargs = {("lam" if k == "lambda" else k): v for k, v in raw.items()}
    for k, v in kwargs.items():
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise ConfigError(f"params.{k} must be a finite number")
    try:
        return ModelParams(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"incomplete params: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _need_number(cfg: dict, key: str, default=None) -> float:
    if key not in cfg:
        if default is not None:
            return default
        raise ConfigError(f"config field '{key}' is required for this mode")
    v = cfg[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
        raise ConfigError(f"config field '{key}' must be a finite number")
    return float(v)


def policy_payload(policy: FeedbackPolicy) -> dict:
    regions = []
    bounds = (0.0, *policy.edges, 1.0)
    for k, v in enumerate(policy.values):
        regions.append({"interval": [bounds[k], bounds[k + 1]], "pi": v})
    points = [{"at": e, "pi": policy.edge_values[j],
               "singular": bool(policy.singular[j])}
              for j, e in enumerate(policy.edges)]
    return {"edges": list(policy.edges), "values": list(policy.values),
            "edge_values": list(policy.edge_values),
            "singular": [bool(s) for s in policy.singular],
            "regions": regions, "points": points}


def outcome_payload(outcome: Outcome) -> dict:
    return {"kind": outcome.kind, "target": outcome.target}


def write_json(payload: dict, path: str) -> None:
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_trajectory_csv(traj, path: str) -> None:
    lines = ["t,i_B,i_R,pi_B,pi_R,running_cost"]
    strategic = traj.pi_R is not None
    for k in range(len(traj.t)):
        pi_r = _fmt(traj.pi_R[k]) if strategic else ""
        lines.append(",".join((
            _fmt(traj.t[k]), _fmt(traj.i_B[k]), _fmt(1.0 - traj.i_B[k]),
            _fmt(traj.pi_B[k]), pi_r, _fmt(traj.running_cost[k]))))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_trajectory_json(traj, path: str) -> None:
    strategic = traj.pi_R is not None
    payload = {
        "columns": ["t", "i_B", "i_R", "pi_B", "pi_R", "running_cost"],
        "step": traj.step,
        "samples": [
            [traj.t[k], traj.i_B[k], 1.0 - traj.i_B[k], traj.pi_B[k],
             traj.pi_R[k] if strategic else None, traj.running_cost[k]]
            for k in range(len(traj.t))],
    }
    write_json(payload, path)


def run_simulate(cfg: dict, out: str, fmt: str) -> None:
    params = parse_params(cfg)
    i0 = _need_number(cfg, "i0")
    t_end = _need_number(cfg, "t_end")
    step = _need_number(cfg, "step", DEFAULT_STEP)
    pi_b = cfg.get("pi_B", "optimal")
    if pi_b == "optimal":
        policy = infinite_horizon.optimal_policy(params)
    elif isinstance(pi_b, (int, float)) and not isinstance(pi_b, bool):
        policy = FeedbackPolicy.constant(float(pi_b))
    else:
        raise ConfigError("'pi_B' must be a number or \"optimal\"")
    traj = dynamics.integrate(policy, None, params, i0, t_end, step)
    if fmt == "csv":
        write_trajectory_csv(traj, out)
    else:
        write_trajectory_json(traj, out)


def run_infinite_opt(cfg: dict, out: str, fmt: str) -> None:
    params = parse_params(cfg)
    i0 = _need_number(cfg, "i0")
    roots = infinite_horizon.roots_F_B(params)
    policy = infinite_horizon.optimal_policy(params)
    outcome = infinite_horizon.limit_outcome(i0, params)
    payload = {
        "mode": "infinite-opt",
        "roots": {"kind": roots.kind, "i1": roots.i1, "i2": roots.i2},
        "singular_control": ((params.alpha_R - params.b) / params.spread
                             if params.b <= params.alpha_R <= params.a else None),
        "policy": policy_payload(policy),
        "i0": i0,
        "outcome": outcome_payload(outcome),
    }
    oracle = cfg.get("oracle")
    if oracle:
        opts = oracle if isinstance(oracle, dict) else {}
        _, best_cost = infinite_horizon.brute_force_best_policy(
            params, i0,
            n_constant=int(opts.get("n_constant", 101)),
            n_threshold=int(opts.get("n_threshold", 20)))
        policy_cost = dynamics.discounted_cost(policy, None, params, i0)
        payload["oracle"] = {
            "policy_cost": policy_cost,
            "best_candidate_cost": best_cost,
            "optimal_within": policy_cost - best_cost,
        }
    write_json(payload, out)


def run_fast_opt(cfg: dict, out: str, fmt: str) -> None:
    params = parse_params(cfg)
    shape = cfg.get("cost_shape", "linear")
    problem = fast_control.FastProblem(
        i0=_need_number(cfg, "i0"), i_e=_need_number(cfg, "i_e"),
        params=params, cost_shape=shape)
    sol = fast_control.solve(problem)
    payload = {
        "mode": "fast-opt",
        "cost_shape": shape,
        "control": sol.control,
        "hitting_time": sol.hitting_time,
        "case_tag": sol.case_tag,
        "boundary_residual": sol.boundary_residual,
        "objective": fast_control.constant_objective(sol.control, problem),
    }
    if cfg.get("oracle"):
        u_best, j_best = fast_control.brute_force_constant_minimizer(problem)
        payload["oracle"] = {"u_best": u_best, "J_best": j_best}
    write_json(payload, out)


def run_nash(cfg: dict, out: str, fmt: str) -> None:
    params = parse_params(cfg)
    i0 = _need_number(cfg, "i0")
    t_end = _need_number(cfg, "t_end", 200.0)
    step = _need_number(cfg, "step", DEFAULT_STEP)
    profile = game.nash_profile(params, i0)
    traj = game.equilibrium_trajectory(params, i0, t_end, step)
    payload = {
        "mode": "nash",
        "row": profile.row,
        "regime": profile.regime,
        "roots_B": {"kind": profile.roots_B.kind,
                    "i1": profile.roots_B.i1, "i2": profile.roots_B.i2},
        "roots_R": {"kind": profile.roots_R.kind,
                    "i3": profile.roots_R.i1, "i4": profile.roots_R.i2},
        "defender_policy": policy_payload(profile.defender_policy),
        "attacker_policy": policy_payload(profile.attacker_policy),
        "i0": i0,
        "predicted_outcome": outcome_payload(profile.predicted_outcome),
        "terminal_state": traj.final_state,
        "trajectory_file": out + ".trajectory.csv",
    }
    write_json(payload, out)
    write_trajectory_csv(traj, out + ".trajectory.csv")


def _verification_checks() -> list[tuple[str, bool, str]]:
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, passed: bool, detail: str) -> None:
        checks.append((name, bool(passed), detail))

    p = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.25, k_R=1.0 / 3.0,
                    lam=4.0)

    # integrator vs closed form, constant control
    errs = []
    for t in np.linspace(0.0, 20.0, 41):
        traj = dynamics.integrate(1.0, None, p, 0.25, float(t))
        errs.append(abs(traj.final_state
                        - dynamics.closed_form_state(float(t), 0.25, 1.0, 0.5)))
    record("rk4-vs-closed-form", max(errs) <= 1e-6, f"max |err| = {max(errs):.3g}")

    # step halving
    e1 = dynamics.integrate(1.0, None, p, 0.25, 10.0, 1e-3).final_state
    e2 = dynamics.integrate(1.0, None, p, 0.25, 10.0, 5e-4).final_state
    record("step-halving", abs(e1 - e2) <= 1e-8, f"|delta| = {abs(e1 - e2):.3g}")

    # root certificate and bisection agreement
    rb = infinite_horizon.roots_F_B(p)
    rbis = infinite_horizon.roots_by_bisection(p)
    res = max(abs(infinite_horizon.eval_F_B(rb.i1, p)),
              abs(infinite_horizon.eval_F_B(rb.i2, p)))
    agree = max(abs(rb.i1 - rbis.i1), abs(rb.i2 - rbis.i2))
    record("root-certificate", res <= 1e-12 and agree <= 1e-10,
           f"|F_B| <= {res:.3g}, bisection gap {agree:.3g}")

    # degenerate single root
    p_single = ModelParams(a=1.0, b=0.0, alpha_R=0.5, z=0.5, k_B=0.5)
    r_single = infinite_horizon.roots_F_B(p_single)
    record("single-root-half", r_single.kind == infinite_horizon.SINGLE_ROOT
           and r_single.i1 == 0.5, f"kind={r_single.kind}, i1={r_single.i1}")

    # discount truncation
    t_max = dynamics.cost_horizon(p)
    pol = infinite_horizon.optimal_policy(p)
    c1 = dynamics.discounted_cost(pol, None, p, 0.3, t_max=t_max)
    c2 = dynamics.discounted_cost(pol, None, p, 0.3, t_max=2.0 * t_max)
    record("discount-truncation", abs(c2 - c1) <= 2.0 * EPS_TAIL,
           f"|delta| = {abs(c2 - c1):.3g}")

    # fast control: linear hitting time vs trajectory crossing
    prob = fast_control.FastProblem(0.25, 0.75, p, "linear")
    sol = fast_control.solve_linear(prob)
    traj = dynamics.integrate(1.0, None, p, 0.25, sol.hitting_time, 1e-4)
    record("linear-hitting-time", abs(traj.final_state - 0.75) <= 1e-4,
           f"i_B(T1) = {traj.final_state:.8f}")

    # fast control: quadratic interior vs oracle
    p_q = ModelParams(a=1.0, b=0.0, alpha_R=0.25, z=0.5, k_B=0.25, lam=4.0)
    prob_q = fast_control.FastProblem(0.25, 0.75, p_q, "quadratic")
    sol_q = fast_control.solve_quadratic(prob_q)
    u_o, _ = fast_control.brute_force_constant_minimizer(prob_q)
    record("quadratic-interior-oracle", abs(sol_q.control - u_o) <= 1e-3,
           f"u* = {sol_q.control:.6f}, oracle {u_o:.6f}")

    # boundary residuals, all three cases
    p_bang = ModelParams(a=1.0, b=0.0, alpha_R=0.25, z=0.5, k_B=0.25, lam=1.0)
    residuals = [
        fast_control.boundary_condition_check(sol, prob),
        fast_control.boundary_condition_check(sol_q, prob_q),
        fast_control.boundary_condition_check(
            fast_control.solve_quadratic(
                fast_control.FastProblem(0.25, 0.75, p_bang, "quadratic")),
            fast_control.FastProblem(0.25, 0.75, p_bang, "quadratic")),
    ]
    worst = max(abs(r) for r in residuals)
    record("boundary-residuals", worst <= 1e-10, f"max |H_F + 1| = {worst:.3g}")

    # game root ordering
    tag = game.ordering_check(ModelParams(a=1.0, b=0.0, z=0.5,
                                          k_B=0.25, k_R=1.0 / 3.0))
    record("root-ordering", tag == "i1<i3<i4<i2", tag)

    # optimal-policy outcomes by simulation
    ok = True
    details = []
    for i0, target in ((0.3, rb.i2), (0.95, rb.i2), (0.05, 0.0)):
        end = dynamics.integrate(pol, None, p, i0, 200.0).final_state
        details.append(f"{i0}->{end:.6f}")
        ok = ok and abs(end - target) <= 1e-4
    record("outcome-simulation", ok, "; ".join(details))
    return checks


def run_verify(cfg: dict, out: str, fmt: str) -> bool:
    checks = _verification_checks()
    payload = {
        "mode": "verify",
        "backend": kernels.BACKEND,
        "checks": [{"name": n, "passed": ok, "detail": d}
                   for n, ok, d in checks],
        "passed": all(ok for _, ok, _ in checks),
    }
    write_json(payload, out)
    for n, ok, d in checks:
        click.echo(f"{'PASS' if ok else 'FAIL'} {n}: {d}")
    return payload["passed"]


def _resolve_output(cfg: dict, out: str | None, fmt: str | None,
                    default_fmt: str) -> tuple[str, str]:
    cfg_out = cfg.get("output") or {}
    if not isinstance(cfg_out, dict):
        raise ConfigError("'output' must be an object with path/format")
    path = out or cfg_out.get("path")
    if not path:
        raise ConfigError("no output path: pass --out or set output.path")
    fmt = fmt or cfg_out.get("format") or default_fmt
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be 'csv' or 'json', got {fmt!r}")
    return str(path), fmt


def _dispatch(mode: str, config: str, out: str | None, fmt: str | None,
              default_fmt: str) -> int:
    try:
        cfg = load_config(config)
        if "mode" in cfg and cfg["mode"] != mode:
            raise ConfigError(f"config mode {cfg['mode']!r} does not match "
                              f"subcommand {mode!r}")
        path, fmt = _resolve_output(cfg, out, fmt, default_fmt)
        if mode == "simulate":
            run_simulate(cfg, path, fmt)
        elif mode == "infinite-opt":
            run_infinite_opt(cfg, path, fmt)
        elif mode == "fast-opt":
            run_fast_opt(cfg, path, fmt)
        elif mode == "nash":
            run_nash(cfg, path, fmt)
        elif mode == "verify":
            if not run_verify(cfg, path, fmt):
                return EXIT_VERIFY
        return EXIT_OK
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return EXIT_CONFIG
    except (UnreachableTargetError, InadmissibleSingularError) as exc:
        click.echo(f"precondition violation: {exc}", err=True)
        return EXIT_PRECONDITION
    except (AcdoptError, ValueError) as exc:
        click.echo(f"precondition violation: {exc}", err=True)
        return EXIT_PRECONDITION


def _mode_command(name: str, default_fmt: str):
    @click.command(name=name)
    @click.option("--config", required=True, type=click.Path(),
                  help="Scenario configuration (JSON).")
    @click.option("--out", default=None, type=click.Path(),
                  help="Output file path (overrides config output.path).")
    @click.option("--format", "fmt", default=None,
                  type=click.Choice(["csv", "json"]),
                  help="Output format (overrides config output.format).")
    def cmd(config, out, fmt):
        sys.exit(_dispatch(name, config, out, fmt, default_fmt))
    return cmd


@click.group()
def main():
    """Optimal active-defense control and attacker-defender equilibria."""


main.add_command(_mode_command("simulate", "csv"))
main.add_command(_mode_command("infinite-opt", "json"))
main.add_command(_mode_command("fast-opt", "json"))
main.add_command(_mode_command("nash", "json"))
main.add_command(_mode_command("verify", "json"))


if __name__ == "__main__":
    main()
