"""Closed intervals with rational endpoints and outward rounding.

Only square roots are irrational in the quantities we bound, so the one
primitive that rounds is :func:`sqrt_interval`.  Everything else is exact
interval arithmetic on Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Union

from .errors import PreconditionError
from .lattice import format_rational
from .verdicts import Verdict

DEFAULT_BITS = 64
Number = Union[int, Fraction]


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v: Number) -> "RationalInterval":
        q = Fraction(v)
        return cls(q, q)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, v: Number) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: "RationalInterval | Number") -> "RationalInterval":
        o = _lift(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other: "RationalInterval | Number") -> "RationalInterval":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "RationalInterval":
        return _lift(other) - self

    def __mul__(self, other: "RationalInterval | Number") -> "RationalInterval":
        o = _lift(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalInterval | Number") -> "RationalInterval":
        o = _lift(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains 0")
        return self * RationalInterval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other: Number) -> "RationalInterval":
        return _lift(other) / self

    def sqrt(self, bits: int = DEFAULT_BITS) -> "RationalInterval":
        if self.lo < 0:
            raise PreconditionError("square root of an interval with negative part")
        return RationalInterval(sqrt_interval(self.lo, bits).lo, sqrt_interval(self.hi, bits).hi)

    # comparisons ------------------------------------------------------
    def compare_le(self, bound: "RationalInterval | Number") -> Verdict:
        """Is every point of self <= every point of bound (holds), none (fails)?"""
        b = _lift(bound)
        if self.hi <= b.lo:
            return Verdict.HOLDS
        if self.lo > b.hi:
            return Verdict.FAILS
        return Verdict.UNKNOWN

    def compare_ge(self, bound: "RationalInterval | Number") -> Verdict:
        return _lift(bound).compare_le(self)

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _lift(v: "RationalInterval | Number") -> RationalInterval:
    return v if isinstance(v, RationalInterval) else RationalInterval.point(v)


def _slot_constructor(n: int, d: int) -> Fraction:
    out = object.__new__(Fraction)
    out._numerator = n  # type: ignore[attr-defined]
    out._denominator = d  # type: ignore[attr-defined]
    return out


def _coprime_fraction_factory() -> Callable[[int, int], Fraction]:
    # sqrt_interval is called millions of times in soundness sweeps, and a
    # normal Fraction(n, d) spends most of its time re-deriving lowest
    # terms.  Dyadic endpoints are reduced by construction, so skip that
    # step when the interpreter's Fraction layout allows it, and fall back
    # to the ordinary constructor otherwise.
    try:
        probe = _slot_constructor(3, 4)
        if probe == Fraction(3, 4) and probe + Fraction(1, 4) == 1 and hash(probe) == hash(Fraction(3, 4)):
            return _slot_constructor
    except (AttributeError, TypeError):
        pass
    return Fraction


_coprime = _coprime_fraction_factory()
_ZERO = Fraction(0)


def _dyadic(a: int, bits: int) -> Fraction:
    """a / 2^bits in lowest terms, for a >= 0."""
    if a & 1:
        return _coprime(a, 1 << bits)
    if a == 0:
        return _ZERO
    tz = min((a & -a).bit_length() - 1, bits)
    return _coprime(a >> tz, 1 << (bits - tz))


def _make(lo: Fraction, hi: Fraction) -> RationalInterval:
    out = object.__new__(RationalInterval)
    object.__setattr__(out, "lo", lo)
    object.__setattr__(out, "hi", hi)
    return out


def sqrt_interval(v: Number, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure [lo, hi] of √v with lo² <= v <= hi².

    Exact when v is the square of a rational; otherwise hi - lo = 2^-bits.
    """
    if bits < 1:
        raise PreconditionError("precision must be at least one bit")
    if type(v) is not Fraction:
        v = Fraction(v)
    p, q = v.numerator, v.denominator
    if p < 0:
        raise PreconditionError(f"square root of negative value {v}")
    rp = isqrt(p)
    if rp * rp == p:
        rq = isqrt(q)
        if rq * rq == q:
            r = Fraction(rp, rq)
            return _make(r, r)
    a = isqrt((p << (2 * bits)) // q)
    return _make(_dyadic(a, bits), _dyadic(a + 1, bits))


def decide(evaluate: Callable[[int], Verdict], bits: int = DEFAULT_BITS, rounds: int = 3) -> tuple[Verdict, int]:
    """Re-run an interval test at bits, 2·bits, 4·bits until it is decided.

    Returns the verdict and the precision that produced it.
    """
    b = bits
    verdict = Verdict.UNKNOWN
    for _ in range(rounds):
        verdict = evaluate(b)
        if verdict is not Verdict.UNKNOWN:
            return verdict, b
        b *= 2
    return verdict, b // 2
