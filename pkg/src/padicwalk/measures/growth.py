"""
Growth diagnostic for the ball measures V_i beyond the window.

The condition asks for some beta > 1 with i^beta / V_i -> 0. Compactly
supported measures always fail it (V_i saturates), so it is only reported,
never enforced.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List
import logging
import math

import numpy as np

logger = logging.getLogger(__name__)

SATISFIED = "satisfied"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

# log-log slope below which the ratio is judged flat
SLOPE_TOLERANCE = 0.05


class TailModel(ABC):
    """Declared behaviour of V_i for large i."""

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def log_v(self, i: int) -> float:
        """Natural log of V_i."""
        pass


@dataclass(frozen=True)
class ConstantTail(TailModel):
    """Compact support: V_i equals the total measure."""
    total: float

    @property
    def name(self) -> str:
        return "constant"

    def log_v(self, i: int) -> float:
        return math.log(self.total)


@dataclass(frozen=True)
class HaarTail(TailModel):
    """Full Haar growth V_i = c * p^i."""
    c: float
    p: int

    @property
    def name(self) -> str:
        return "haar"

    def log_v(self, i: int) -> float:
        return math.log(self.c) + i * math.log(self.p)


@dataclass(frozen=True)
class PowerTail(TailModel):
    """Polynomial growth V_i = c * i^degree."""
    c: float
    degree: float

    @property
    def name(self) -> str:
        return "power"

    def log_v(self, i: int) -> float:
        return math.log(self.c) + self.degree * math.log(i)


@dataclass
class GrowthReport:
    """Outcome of the growth diagnostic with the sampled sequence."""
    tail: str
    beta: float
    horizon: int
    verdict: str
    slope: float
    levels: List[int] = field(default_factory=list)
    log10_ratios: List[float] = field(default_factory=list)


def check_growth_condition(tail: TailModel, beta: float, horizon: int = 200) -> GrowthReport:
    """
    Sample log(i^beta / V_i) for i = 1..horizon and classify its limit by the
    least-squares slope against log i over the second half of the range.
    """
    if beta <= 1:
        raise ValueError(f"beta must exceed 1, got {beta}")
    if horizon < 4:
        raise ValueError(f"horizon must be at least 4, got {horizon}")

    levels = np.arange(1, horizon + 1)
    log_ratios = np.array([beta * math.log(i) - tail.log_v(int(i)) for i in levels])

    half = horizon // 2
    slope = float(np.polyfit(np.log(levels[half:]), log_ratios[half:], 1)[0])

    if slope < -SLOPE_TOLERANCE:
        verdict = SATISFIED
    elif slope > SLOPE_TOLERANCE:
        verdict = VIOLATED
    else:
        verdict = INCONCLUSIVE
        logger.warning(
            f"Growth diagnostic inconclusive for {tail.name} tail (slope {slope:.3g})"
        )

    return GrowthReport(
        tail=tail.name,
        beta=beta,
        horizon=horizon,
        verdict=verdict,
        slope=slope,
        levels=levels.tolist(),
        log10_ratios=(log_ratios / math.log(10)).tolist(),
    )
