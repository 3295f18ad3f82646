"""State-feedback control policies.

A :class:`FeedbackPolicy` partitions ``[0, 1]`` into regions separated by
``edges`` and assigns one control level per region.  Each edge carries its
own control value so interval-boundary conventions (``<`` vs ``<=``) can be
encoded exactly.  Edges flagged ``singular`` apply their value inside a
``+-eps`` band around the edge instead of at the exact point only; this is
how singular arcs are realized numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import EPS_ROOT


@dataclass(frozen=True)
class FeedbackPolicy:
    edges: tuple[float, ...] = ()
    values: tuple[float, ...] = (0.0,)
    edge_values: tuple[float, ...] = ()
    singular: tuple[bool, ...] = ()

    def __post_init__(self) -> None:
        if len(self.values) != len(self.edges) + 1:
            raise ValueError("need exactly one region value per region")
        if len(self.edge_values) != len(self.edges):
            raise ValueError("need exactly one value per edge")
        if len(self.singular) != len(self.edges):
            raise ValueError("need exactly one singular flag per edge")
        for lo, hi in zip(self.edges, self.edges[1:]):
            if not lo < hi:
                raise ValueError("edges must be strictly increasing")
        for e in self.edges:
            if not 0.0 < e < 1.0:
                raise ValueError(f"edges must lie in (0, 1), got {e}")
        for v in self.values + self.edge_values:
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"control values must lie in [0, 1], got {v}")

    @classmethod
    def constant(cls, value: float) -> "FeedbackPolicy":
        return cls(values=(float(value),))

    @classmethod
    def two_threshold(cls, lo: float, hi: float) -> "FeedbackPolicy":
        """Bang policy: 0 below ``lo``, 1 on ``[lo, hi]``, 0 above ``hi``."""
        return cls(edges=(lo, hi), values=(0.0, 1.0, 0.0),
                   edge_values=(1.0, 1.0), singular=(False, False))

    def __call__(self, i_B: float, eps: float = EPS_ROOT) -> float:
        for j, e in enumerate(self.edges):
            if self.singular[j]:
                if abs(i_B - e) < eps:
                    return self.edge_values[j]
            elif i_B == e:
                return self.edge_values[j]
        k = 0
        for e in self.edges:
            if i_B > e:
                k += 1
            else:
                break
        return self.values[k]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flat representation consumed by the integration kernels."""
        return (np.asarray(self.edges, dtype=np.float64),
                np.asarray(self.values, dtype=np.float64),
                np.asarray(self.edge_values, dtype=np.float64),
                np.asarray(self.singular, dtype=np.uint8))
