"""Exact arithmetic in quadratic extensions Q(sqrt(D)) with D < 0.

Numbers are stored as a + b*sqrt(D) with a, b, D all rational and D
negative, so every value is a genuinely complex number whose argument
lies in (0, pi) exactly when b > 0.  All sign and argument tests are
decided by integer arithmetic on Fractions; no floating point is used
anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rat = Fraction
RatLike = Union[Fraction, int]


class DeltaMismatchError(ValueError):
    """Two quadratic numbers over different discriminants were combined."""


@dataclass(frozen=True)
class QuadNum:
    """Element a + b*sqrt(delta) of Q(sqrt(delta)), delta < 0 rational."""

    re: Fraction
    im_coeff: Fraction
    delta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im_coeff", Fraction(self.im_coeff))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.delta >= 0:
            raise ValueError(f"delta must be negative, got {self.delta}")

    def _check(self, other: "QuadNum") -> None:
        if self.delta != other.delta:
            raise DeltaMismatchError(
                f"cannot mix sqrt({self.delta}) with sqrt({other.delta})"
            )

    def __add__(self, other: "QuadNum") -> "QuadNum":
        self._check(other)
        return QuadNum(self.re + other.re, self.im_coeff + other.im_coeff, self.delta)

    def __sub__(self, other: "QuadNum") -> "QuadNum":
        self._check(other)
        return QuadNum(self.re - other.re, self.im_coeff - other.im_coeff, self.delta)

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.re, -self.im_coeff, self.delta)

    def __mul__(self, other: "QuadNum") -> "QuadNum":
        self._check(other)
        a, b, c, d = self.re, self.im_coeff, other.re, other.im_coeff
        return QuadNum(a * c + b * d * self.delta, a * d + b * c, self.delta)

    def scale(self, s: RatLike) -> "QuadNum":
        s = Fraction(s)
        return QuadNum(self.re * s, self.im_coeff * s, self.delta)

    def conjugate(self) -> "QuadNum":
        return QuadNum(self.re, -self.im_coeff, self.delta)

    def norm(self) -> Fraction:
        """a^2 - delta*b^2; nonnegative, zero only at zero (delta < 0)."""
        return self.re * self.re - self.delta * self.im_coeff * self.im_coeff

    def is_zero(self) -> bool:
        return self.re == 0 and self.im_coeff == 0

    def im_sign(self) -> int:
        """Sign of the imaginary part (sqrt(delta) lies on the positive
        imaginary axis, so this is just the sign of the coefficient)."""
        b = self.im_coeff
        return (b > 0) - (b < 0)

    def __repr__(self) -> str:
        return f"QuadNum({self.re}, {self.im_coeff}, delta={self.delta})"


def quad(re: RatLike, im_coeff: RatLike, delta: RatLike) -> QuadNum:
    return QuadNum(Fraction(re), Fraction(im_coeff), Fraction(delta))


def quad_pow(z: QuadNum, m: int) -> QuadNum:
    """Exact m-th power of z, m >= 0."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    result = QuadNum(Fraction(1), Fraction(0), z.delta)
    base = z
    while m:
        if m & 1:
            result = result * base
        base = base * base
        m >>= 1
    return result


def is_negative_real(z: QuadNum) -> bool:
    """True iff z lies on the strictly negative real axis."""
    return z.im_coeff == 0 and z.re < 0


def arg_less_than(z: QuadNum, q: int) -> bool:
    """Decide arg(z) < pi/q exactly, for z nonzero in the closed upper
    half plane with arg(z) in (0, pi/2).

    Criterion: arg(z) < pi/q iff z^k stays in the open upper half plane
    for every k = 2..q.
    """
    if z.is_zero():
        raise ValueError("argument of zero is undefined")
    if q < 2:
        raise ValueError("q must be at least 2")
    if z.re <= 0 and z.im_coeff <= 0:
        raise ValueError("z must satisfy re > 0 or im > 0")
    w = z
    for _ in range(2, q + 1):
        w = w * z
        if w.im_sign() <= 0:
            return False
    return True


# Rational values of tan^2(pi/q) and cos^2(pi/q).  By Niven's theorem the
# only q >= 2 with rational cos(pi/q) or rational cos^2(pi/q) are the ones
# below; absence from the table certifies irrationality.
_TAN_SQ = {3: Fraction(3), 4: Fraction(1), 6: Fraction(1, 3)}
_COS_SQ = {2: Fraction(0), 3: Fraction(1, 4), 4: Fraction(1, 2), 6: Fraction(3, 4)}


def tan_sq_pi_over(q: int) -> Optional[Fraction]:
    """tan^2(pi/q) when rational, None otherwise (q=2 is a pole)."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return _TAN_SQ.get(q)


def cos_sq_pi_over(q: int) -> Optional[Fraction]:
    """cos^2(pi/q) when rational, None otherwise."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return _COS_SQ.get(q)
