"""Exact min-plus scalars: (Q ∪ {inf}, min, +).

TropScalar follows the usual semiring operator convention: ``+`` is
tropical addition (min) and ``*`` is tropical multiplication (ordinary
addition).  All arithmetic is exact; values are Fractions or the
distinguished infinite element INF.
"""

from __future__ import annotations

from fractions import Fraction


class TropScalar:
    """An element of the tropical semiring: a rational number or infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        # value: Fraction for finite elements, None for infinity
        if value is not None and not isinstance(value, Fraction):
            value = Fraction(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("TropScalar is immutable")

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    # -- semiring operations -------------------------------------------------

    def __add__(self, other: "TropScalar") -> "TropScalar":
        other = as_trop(other)
        if self.is_inf:
            return other
        if other.is_inf:
            return self
        return TropScalar(min(self.value, other.value))

    __radd__ = __add__

    def __mul__(self, other: "TropScalar") -> "TropScalar":
        other = as_trop(other)
        if self.is_inf or other.is_inf:
            return INF
        return TropScalar(self.value + other.value)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TropScalar":
        if n < 0 and self.is_inf:
            raise ZeroDivisionError("negative tropical power of infinity")
        if self.is_inf:
            return INF if n > 0 else TropScalar(0)
        return TropScalar(self.value * n)

    # -- total order (infinity largest) --------------------------------------

    def _cmp(self, other: "TropScalar") -> int:
        other = as_trop(other)
        if self.is_inf and other.is_inf:
            return 0
        if self.is_inf:
            return 1
        if other.is_inf:
            return -1
        return (self.value > other.value) - (self.value < other.value)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (TropScalar, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash(("TropScalar", self.value))

    def __repr__(self):
        return "inf" if self.is_inf else str(self.value)


INF = TropScalar(None)


def as_trop(x) -> TropScalar:
    """Coerce ints, Fractions, and None into TropScalar."""
    if isinstance(x, TropScalar):
        return x
    if x is None:
        return INF
    return TropScalar(Fraction(x))


def trop_min(values) -> TropScalar:
    """Tropical sum of an iterable; INF for the empty sum."""
    out = INF
    for v in values:
        out = out + as_trop(v)
    return out


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational literal 'p', '-p', or 'p/q'."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    return str(q)
