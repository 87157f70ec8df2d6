"""
Radial jump-rate profiles W(p^i).

W values are floats (they only feed eigenvalues and rates); the levels they
are attached to are exact integers of the window.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping
import math

from ..exceptions import MonotonicityViolationError, UnsupportedTailError
from ..padic import Base, Window

VANISHING_TAIL = "vanishing"


@dataclass(frozen=True)
class RateProfile:
    """
    W(p^i) for every level i of the window, with the vanishing-tail
    convention W(p^i) -> 0 beyond gamma_max.
    """
    base: Base
    window: Window
    values: Mapping[int, float]
    tail: str = VANISHING_TAIL
    kind: str = "table"
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.tail != VANISHING_TAIL:
            raise UnsupportedTailError(
                f"Tail convention {self.tail!r} is not supported; only "
                f"{VANISHING_TAIL!r} tails have a closed-form eigenvalue sum"
            )

        values = {int(i): float(w) for i, w in self.values.items()}
        missing = [i for i in self.levels() if i not in values]
        if missing:
            raise ValueError(f"Rate table misses levels {missing}")
        for i in self.levels():
            w = values[i]
            if not math.isfinite(w) or w <= 0:
                raise ValueError(f"W(p^{i}) must be positive and finite, got {w!r}")
        for i in self.levels()[:-1]:
            if values[i] < values[i + 1]:
                raise MonotonicityViolationError(i, values[i], values[i + 1])

        object.__setattr__(self, "values", {i: values[i] for i in self.levels()})

    def levels(self) -> List[int]:
        return list(range(self.window.gamma_min, self.window.gamma_max + 1))

    def w(self, i: int) -> float:
        """W(p^i) for a level inside the window."""
        try:
            return self.values[i]
        except KeyError:
            raise ValueError(
                f"Level {i} outside rate window [{self.window.gamma_min}, {self.window.gamma_max}]"
            ) from None

    def delta_w(self, i: int) -> float:
        """W(p^i) - W(p^(i+1)) for gamma_min <= i < gamma_max."""
        if not self.window.gamma_min <= i < self.window.gamma_max:
            raise ValueError(
                f"delta_w is defined for levels [{self.window.gamma_min}, {self.window.gamma_max - 1}], got {i}"
            )
        return self.values[i] - self.values[i + 1]

    @property
    def tail_total(self) -> float:
        """Sum of delta_w over all levels >= gamma_max; W(p^gamma_max) when W vanishes."""
        return self.values[self.window.gamma_max]

    def telescoping_residual(self, gamma: int) -> float:
        """Relative error of sum_{i>=gamma} delta_w(i) + tail_total = W(p^gamma)."""
        total = sum(self.delta_w(i) for i in range(gamma, self.window.gamma_max)) + self.tail_total
        return abs(total - self.w(gamma)) / self.w(gamma)


def vladimirov_profile(alpha: float, window: Window, base: Base, tail: str = VANISHING_TAIL) -> RateProfile:
    """W(r) = r^-(alpha+1), i.e. W(p^i) = p^(-i(alpha+1))."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    values = {
        i: float(base.p) ** (-i * (alpha + 1))
        for i in range(window.gamma_min, window.gamma_max + 1)
    }
    return RateProfile(base, window, values, tail=tail, kind="vladimirov", params={"alpha": alpha})


def table_profile(
    values: Mapping[int, float],
    window: Window,
    base: Base,
    tail: str = VANISHING_TAIL,
) -> RateProfile:
    """A user-supplied table; must be positive and non-increasing."""
    return RateProfile(base, window, dict(values), tail=tail, kind="table")
