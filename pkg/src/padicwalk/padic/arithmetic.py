"""
Exact finite-precision p-adic arithmetic.

Norms, distances and ball addresses are computed digit-wise, so no
subtraction (and no infinite expansion) is ever needed.
"""

from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from ..exceptions import BallBoundaryError, BaseMismatchError, OutsideRootBallError
from .base import DIGIT_CHARS, BallAddress, Base, PAdicApprox, Window


def from_fraction(base: Base, value) -> PAdicApprox:
    """
    Expand a nonnegative rational with a finite base-p expansion.

    Raises ValueError for negative values and for denominators with a
    factor coprime to p; both would need infinitely many digits.
    """
    q = Fraction(value)
    if q < 0:
        raise ValueError(f"{q} has an infinite {base.p}-adic expansion (negative)")
    if q == 0:
        return PAdicApprox(base, 0, ())

    rest = q.denominator
    while (g := gcd(rest, base.p)) > 1:
        rest //= g
    if rest != 1:
        raise ValueError(f"{q} has an infinite {base.p}-adic expansion")

    k, scale = 0, 1
    while scale % q.denominator:
        k += 1
        scale *= base.p

    n = q.numerator * (scale // q.denominator)
    digits: List[int] = []
    while n:
        n, d = divmod(n, base.p)
        digits.append(d)
    return PAdicApprox(base, -k, tuple(digits))


def to_fraction(x: PAdicApprox) -> Fraction:
    return sum(
        (d * x.base.power(x.lowest_exponent + k) for k, d in enumerate(x.digits)),
        Fraction(0),
    )


def norm(x: PAdicApprox) -> Fraction:
    """p-adic absolute value |x|_p = p^(-v)."""
    if x.is_zero:
        return Fraction(0)
    return x.base.power(-x.lowest_exponent)


def distance(x: PAdicApprox, y: PAdicApprox) -> Fraction:
    """|x - y|_p, read off the lowest exponent where the digits differ."""
    if x.base != y.base:
        raise BaseMismatchError(f"Base mismatch: p={x.base.p} vs p={y.base.p}")
    if x == y:
        return Fraction(0)

    exponents = [e for v in (x, y) if not v.is_zero
                 for e in (v.lowest_exponent, v.highest_exponent)]
    for e in range(min(exponents), max(exponents) + 1):
        if x.digit_at(e) != y.digit_at(e):
            return x.base.power(-e)
    return Fraction(0)


def split_parts(x: PAdicApprox) -> Tuple[PAdicApprox, PAdicApprox]:
    """Fractional part {x} (negative exponents) and integer part [x]."""
    frac = tuple(x.digit_at(e) for e in range(x.lowest_exponent, 0))
    whole = tuple(
        x.digit_at(e) for e in range(max(0, x.lowest_exponent), x.lowest_exponent + len(x.digits))
    )
    return (
        PAdicApprox(x.base, x.lowest_exponent, frac),
        PAdicApprox(x.base, max(0, x.lowest_exponent), whole),
    )


def add_disjoint(x: PAdicApprox, y: PAdicApprox) -> PAdicApprox:
    """Sum of two expansions whose nonzero digits never share an exponent."""
    if x.base != y.base:
        raise BaseMismatchError(f"Base mismatch: p={x.base.p} vs p={y.base.p}")
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    lo = min(x.lowest_exponent, y.lowest_exponent)
    hi = max(x.highest_exponent, y.highest_exponent)
    digits = []
    for e in range(lo, hi + 1):
        a, b = x.digit_at(e), y.digit_at(e)
        if a and b:
            raise ValueError(f"Digits overlap at exponent {e}")
        digits.append(a or b)
    return PAdicApprox(x.base, lo, tuple(digits))


def scale_by_power(x: PAdicApprox, k: int) -> PAdicApprox:
    """Multiply by p^k (a pure digit shift)."""
    if x.is_zero:
        return x
    return PAdicApprox(x.base, x.lowest_exponent + k, x.digits)


def root_ball(base: Base, window: Window) -> BallAddress:
    return BallAddress(base, window.gamma_max, ())


def in_root_ball(x: PAdicApprox, window: Window) -> bool:
    return x.is_zero or x.lowest_exponent >= -window.gamma_max


def ball_of(x: PAdicApprox, level: int, window: Window) -> BallAddress:
    """
    The ball of radius p^level containing x.

    Its path holds the digits of x at exponents -gamma_max .. -level-1,
    coarsest first.
    """
    if not window.contains_level(level):
        raise ValueError(
            f"Level {level} outside window [{window.gamma_min}, {window.gamma_max}]"
        )
    if not in_root_ball(x, window):
        raise OutsideRootBallError(
            f"|x|_p = {norm(x)} exceeds root radius p^{window.gamma_max}"
        )
    path = tuple(x.digit_at(e) for e in range(-window.gamma_max, -level))
    return BallAddress(x.base, level, path)


def parent(ball: BallAddress) -> BallAddress:
    if ball.is_root:
        raise BallBoundaryError(f"{ball} is the root ball and has no parent")
    return BallAddress(ball.base, ball.level + 1, ball.path[:-1])


def children(ball: BallAddress, window: Optional[Window] = None) -> List[BallAddress]:
    """The p maximal sub-balls, ordered by digit."""
    if window is not None and ball.level <= window.gamma_min:
        raise BallBoundaryError(f"{ball} is a leaf of the window and has no children")
    return [
        BallAddress(ball.base, ball.level - 1, ball.path + (a,))
        for a in range(ball.base.p)
    ]


def ancestor(ball: BallAddress, level: int) -> BallAddress:
    """The ball of radius p^level containing `ball` (level >= ball.level)."""
    if level < ball.level:
        raise ValueError(f"Level {level} is finer than {ball}")
    if level > ball.root_level:
        raise BallBoundaryError(f"Level {level} is above the root of {ball}")
    return BallAddress(ball.base, level, ball.path[: ball.root_level - level])


def contains(outer: BallAddress, inner: BallAddress) -> bool:
    return (
        outer.base == inner.base
        and outer.root_level == inner.root_level
        and outer.level >= inner.level
        and inner.path[: len(outer.path)] == outer.path
    )


def center(ball: BallAddress) -> PAdicApprox:
    """Canonical centre: the digit truncation with smallest nonnegative value."""
    return PAdicApprox(ball.base, -ball.root_level, ball.path)


def format_path(base: Base, path: Tuple[int, ...]) -> str:
    if base.p > len(DIGIT_CHARS):
        raise ValueError(f"Digit-path text form supports p <= {len(DIGIT_CHARS)}")
    return "".join(DIGIT_CHARS[d] for d in path)


def parse_path(base: Base, text: str) -> Tuple[int, ...]:
    digits = []
    for ch in text.strip().lower():
        d = DIGIT_CHARS.find(ch)
        if d < 0 or d >= base.p:
            raise ValueError(f"Invalid digit {ch!r} for base {base.p} in path {text!r}")
        digits.append(d)
    return tuple(digits)


def ball_from_path(base: Base, window: Window, text: str) -> BallAddress:
    """Parse a digit-path string into a ball of the window."""
    path = parse_path(base, text)
    if len(path) > window.depth:
        raise ValueError(f"Path {text!r} is deeper than the window ({window.depth})")
    return BallAddress(base, window.gamma_max - len(path), path)
