"""Model parameters and trajectory containers.

The state is the defender-occupied share ``i_B`` of the network, with the
attacker share implicitly ``1 - i_B``.  Both players draw their power from
the common interval ``[b, a]`` through a control level ``pi`` in ``[0, 1]``:
``power = b + pi * (a - b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Default fixed integrator step (time units).
DEFAULT_STEP = 1e-3

#: Half-width of the band around a singular state inside which the singular
#: control value is applied (exact equality is meaningless in floating point).
EPS_ROOT = 1e-9

#: Default truncation error budget for infinite-horizon cost integrals.
EPS_TAIL = 1e-9


@dataclass(frozen=True)
class ModelParams:
    """Economic and dynamic constants shared by all solver modules.

    ``a`` and ``b`` are the endpoints of the control-power interval,
    ``alpha_R`` the attacker's fixed power (used only when the attacker is
    non-strategic), ``z`` the discount rate, ``k_B``/``k_R`` the players'
    control-cost ratios and ``lam`` the time-vs-effort normalization used by
    the fast-control objective.  The running costs are linear:
    ``f_B(i) = 1 + fB_slope * i`` (defender, decreasing) and
    ``f_R(i) = fR_slope * i`` (attacker, increasing).
    """

    a: float
    b: float
    alpha_R: float = 0.0
    z: float = 1.0
    k_B: float = 0.0
    k_R: float = 0.0
    lam: float = 1.0
    fB_slope: float = -1.0
    fR_slope: float = 1.0

    def __post_init__(self) -> None:
        fields = (self.a, self.b, self.alpha_R, self.z, self.k_B, self.k_R,
                  self.lam, self.fB_slope, self.fR_slope)
        if not all(math.isfinite(v) for v in fields):
            raise ValueError("model parameters must be finite")
        if not 0.0 <= self.b < self.a <= 1.0:
            raise ValueError(f"need 0 <= b < a <= 1, got b={self.b}, a={self.a}")
        if not 0.0 <= self.alpha_R <= 1.0:
            raise ValueError(f"alpha_R must lie in [0, 1], got {self.alpha_R}")
        if self.z <= 0.0:
            raise ValueError(f"discount rate z must be positive, got {self.z}")
        if self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if self.k_B < 0.0 or self.k_R < 0.0:
            raise ValueError("cost ratios k_B, k_R must be non-negative")
        if self.fB_slope >= 0.0:
            raise ValueError("fB_slope must be negative (recovery cost falls as i_B grows)")
        if self.fR_slope <= 0.0:
            raise ValueError("fR_slope must be positive (maintenance cost rises with i_B)")

    @property
    def spread(self) -> float:
        """Width ``a - b`` of the control-power interval."""
        return self.a - self.b

    def f_B(self, i_B: float) -> float:
        """Defender recovery cost at share ``i_B``."""
        return 1.0 + self.fB_slope * i_B

    def f_R(self, i_B: float) -> float:
        """Attacker maintenance cost at share ``i_B``."""
        return self.fR_slope * i_B

    def power(self, pi: float) -> float:
        """Induced power ``b + pi * (a - b)`` for a control level ``pi``."""
        return self.b + pi * (self.a - self.b)


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled path of the state under applied controls.

    ``pi_R`` is None when the attacker is non-strategic (fixed power).
    ``running_cost`` is the defender's discounted cost accumulated up to each
    sample time.
    """

    t: np.ndarray
    i_B: np.ndarray
    pi_B: np.ndarray
    pi_R: np.ndarray | None
    running_cost: np.ndarray
    step: float

    def __post_init__(self) -> None:
        n = len(self.t)
        if not (len(self.i_B) == len(self.pi_B) == len(self.running_cost) == n):
            raise ValueError("trajectory arrays must share one length")
        if self.pi_R is not None and len(self.pi_R) != n:
            raise ValueError("trajectory arrays must share one length")

    @property
    def i_R(self) -> np.ndarray:
        """Attacker share, ``1 - i_B`` at every sample."""
        return 1.0 - self.i_B

    @property
    def final_state(self) -> float:
        return float(self.i_B[-1])

    @property
    def final_cost(self) -> float:
        return float(self.running_cost[-1])
