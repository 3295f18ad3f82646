"""Optimal active cyber defense: control policies and attacker-defender equilibria.

Solves logistic attack-defense share dynamics under three lenses: discounted
infinite-horizon optimal defense against a fixed attacker, fastest-possible
capture of a target share, and equilibrium play between a strategic attacker
and defender.  Every closed-form result is backed by an independent numeric
oracle.
"""

from .dynamics import closed_form_state, discounted_cost, drift, fast_cost, integrate
from .errors import (AcdoptError, ConfigError, InadmissibleSingularError,
                     UnreachableTargetError)
from .fast_control import FastControlSolution, FastProblem
from .game import BestResponseReport, NashProfile
from .infinite_horizon import RootPair, SwitchingDiagnostics
from .kernels import BACKEND
from .outcomes import Outcome
from .params import ModelParams, Trajectory
from .policy import FeedbackPolicy

__all__ = [
    "AcdoptError", "BACKEND", "BestResponseReport", "ConfigError",
    "FastControlSolution", "FastProblem", "FeedbackPolicy",
    "InadmissibleSingularError", "ModelParams", "NashProfile", "Outcome",
    "RootPair", "SwitchingDiagnostics", "Trajectory",
    "UnreachableTargetError", "closed_form_state", "discounted_cost",
    "drift", "fast_cost", "integrate",
]

__version__ = "0.1.0"
