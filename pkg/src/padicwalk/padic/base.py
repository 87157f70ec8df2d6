"""
Core p-adic value types.

All types here are frozen dataclasses; every quantity that describes a ball
or a norm is an exact integer or Fraction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Base:
    """The base p of the expansion. Primality is never assumed."""
    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"Base must be an integer >= 2, got {self.p!r}")

    def power(self, k: int) -> Fraction:
        """Return p^k as an exact rational (k may be negative)."""
        return Fraction(self.p) ** k


@dataclass(frozen=True)
class PAdicApprox:
    """
    A finite p-adic expansion x = sum_k digits[k] * p^(lowest_exponent + k).

    The value is kept canonical: zero digits at both ends are trimmed and the
    zero value has no digits and lowest_exponent 0.
    """
    base: Base
    lowest_exponent: int
    digits: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        digits = tuple(int(d) for d in self.digits)
        for d in digits:
            if not 0 <= d < self.base.p:
                raise ValueError(f"Digit {d} outside [0, {self.base.p - 1}]")

        lo, hi = 0, len(digits)
        while lo < hi and digits[lo] == 0:
            lo += 1
        while hi > lo and digits[hi - 1] == 0:
            hi -= 1

        if lo == hi:
            object.__setattr__(self, "lowest_exponent", 0)
            object.__setattr__(self, "digits", ())
        else:
            object.__setattr__(self, "lowest_exponent", self.lowest_exponent + lo)
            object.__setattr__(self, "digits", digits[lo:hi])

    @property
    def is_zero(self) -> bool:
        return not self.digits

    @property
    def highest_exponent(self) -> int:
        """Exponent of the most significant nonzero digit (undefined for zero)."""
        return self.lowest_exponent + len(self.digits) - 1

    def digit_at(self, exponent: int) -> int:
        """Digit multiplying p^exponent."""
        k = exponent - self.lowest_exponent
        if 0 <= k < len(self.digits):
            return self.digits[k]
        return 0


@dataclass(frozen=True)
class Window:
    """
    Finite resolution window of Q_p: leaves are balls of radius p^gamma_min
    inside the root ball of radius p^gamma_max centred at 0.
    """
    gamma_min: int
    gamma_max: int

    def __post_init__(self):
        if self.gamma_min > self.gamma_max:
            raise ValueError(
                f"gamma_min={self.gamma_min} exceeds gamma_max={self.gamma_max}"
            )

    @property
    def depth(self) -> int:
        return self.gamma_max - self.gamma_min

    def leaf_count(self, base: Base) -> int:
        return base.p ** self.depth

    def leaf_volume(self, base: Base) -> Fraction:
        """Haar volume of one leaf."""
        return base.power(self.gamma_min)

    def contains_level(self, level: int) -> bool:
        return self.gamma_min <= level <= self.gamma_max


@dataclass(frozen=True)
class BallAddress:
    """
    A ball of radius p^level, addressed by the digits chosen on the way down
    from the root ball. The root level is level + len(path).
    """
    base: Base
    level: int
    path: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        path = tuple(int(d) for d in self.path)
        for d in path:
            if not 0 <= d < self.base.p:
                raise ValueError(f"Path digit {d} outside [0, {self.base.p - 1}]")
        object.__setattr__(self, "path", path)

    @property
    def root_level(self) -> int:
        return self.level + len(self.path)

    @property
    def is_root(self) -> bool:
        return not self.path

    @property
    def digit(self) -> int:
        """Last path digit: which sub-ball of the parent this ball is."""
        if not self.path:
            raise ValueError("The root ball has no selecting digit")
        return self.path[-1]

    def __str__(self) -> str:
        from .arithmetic import format_path
        return f"B{self.level}[{format_path(self.base, self.path) or 'root'}]"
