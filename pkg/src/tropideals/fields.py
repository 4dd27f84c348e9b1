"""Exact valued fields: Q (trivial or p-adic valuation), Q(t) (t-adic),
and F_p with the trivial valuation (used internally for residue fields).

Field elements are Fractions, RatFunc instances, or GFElement instances;
a ValuedField object supplies construction, valuation, and residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


# -- univariate polynomials over Q, coefficient lists with trailing zeros stripped


def _poly_trim(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_neg(a):
    return tuple(-c for c in a)


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c != 0:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _poly_trim(q), _poly_trim(a)


def _poly_gcd(a, b):
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


def _poly_order(a) -> int:
    """t-adic order: index of the lowest nonzero coefficient."""
    for i, c in enumerate(a):
        if c != 0:
            return i
    raise ValueError("order of the zero polynomial")


class RatFunc:
    """Element of Q(t), reduced fraction of Q[t] polynomials (monic denominator)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = _poly_trim([Fraction(c) for c in num])
        den = _poly_trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator in Q(t)")
        if num:
            g = _poly_gcd(num, den)
            if len(g) > 1:
                num = _poly_divmod(num, g)[0]
                den = _poly_divmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        else:
            den = (Fraction(1),)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def const(cls, q) -> "RatFunc":
        return cls([Fraction(q)])

    @classmethod
    def t_power(cls, k: int, scale=1) -> "RatFunc":
        if k >= 0:
            return cls([Fraction(0)] * k + [Fraction(scale)])
        return cls([Fraction(scale)], [Fraction(0)] * (-k) + [Fraction(1)])

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        other = _ratfunc(other)
        return RatFunc(
            _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den)),
            _poly_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_poly_neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-_ratfunc(other))

    def __rsub__(self, other):
        return _ratfunc(other) + (-self)

    def __mul__(self, other):
        other = _ratfunc(other)
        return RatFunc(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _ratfunc(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero in Q(t)")
        return RatFunc(_poly_mul(self.num, other.den), _poly_mul(self.den, other.num))

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc((Fraction(1),)) / self ** (-n)
        out = RatFunc((Fraction(1),))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __rtruediv__(self, other):
        return _ratfunc(other) / self

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction)):
            return NotImplemented
        other = _ratfunc(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def order(self) -> int:
        if self.is_zero:
            raise ValueError("t-adic order of zero")
        return _poly_order(self.num) - _poly_order(self.den)

    def leading_residue(self) -> Fraction:
        """Coefficient of t^order in the Laurent expansion (exact)."""
        on = _poly_order(self.num)
        od = _poly_order(self.den)
        return self.num[on] / self.den[od]

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for i, c in enumerate(p):
                if c == 0:
                    continue
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append(f"{c}*t" if c != 1 else "t")
                else:
                    parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
            return " + ".join(parts)

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


def _ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(Fraction(x))


class GFElement:
    """Element of F_p; used as the residue field of (Q, p-adic)."""

    __slots__ = ("p", "r")

    def __init__(self, p: int, r: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", r % p)

    def __setattr__(self, *_):
        raise AttributeError("GFElement is immutable")

    @property
    def is_zero(self):
        return self.r == 0

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        q = Fraction(other)
        return GFElement(self.p, q.numerator * pow(q.denominator, -1, self.p))

    def __add__(self, other):
        o = self._coerce(other)
        return GFElement(self.p, self.r + o.r)

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.p, -self.r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return GFElement(self.p, self.r * o.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.r == 0:
            raise ZeroDivisionError
        return GFElement(self.p, self.r * pow(o.r, -1, self.p))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.r == other.r
        if isinstance(other, int):
            return self.r == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(("GF", self.p, self.r))

    def __repr__(self):
        return f"{self.r} (mod {self.p})"


def padic_valuation(q: Fraction, p: int) -> int:
    if q == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = q.numerator, q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


TRIVIAL = "trivial"
P_ADIC = "p-adic"
T_ADIC = "t-adic"
FINITE_TRIVIAL = "finite-trivial"  # residue fields of p-adic ideals; internal
P_GAUSS = "p-gauss"  # Q(s) with the Gauss extension of the p-adic valuation;
# the residue field F_p(s) is infinite, so s is a provably generic unit.
# Internal: used to specialize p-adic ideals exactly.


@dataclass(frozen=True)
class ValuedField:
    """A field with a ring valuation; supplies element construction and val()."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind in (P_ADIC, FINITE_TRIVIAL, P_GAUSS) and self.p < 2:
            raise ValueError("prime required")

    # -- element construction --------------------------------------------------

    @property
    def zero(self):
        return self.lift(0)

    @property
    def one(self):
        return self.lift(1)

    def lift(self, q):
        """Embed an exact rational into the field."""
        q = Fraction(q)
        if self.kind in (T_ADIC, P_GAUSS):
            return RatFunc.const(q)
        if self.kind == FINITE_TRIVIAL:
            return GFElement(self.p, q.numerator * pow(q.denominator, -1, self.p))
        return q

    def is_zero(self, x) -> bool:
        if isinstance(x, (RatFunc, GFElement)):
            return x.is_zero
        return x == 0

    # -- valuation ----------------------------------------------------------------

    def val(self, x):
        """Valuation as a Fraction, or None for the zero element."""
        if self.is_zero(x):
            return None
        if self.kind == TRIVIAL or self.kind == FINITE_TRIVIAL:
            return Fraction(0)
        if self.kind == P_ADIC:
            return Fraction(padic_valuation(x, self.p))
        if self.kind == P_GAUSS:
            # Gauss valuation: min over the polynomial coefficients
            num = min(padic_valuation(c, self.p) for c in x.num if c != 0)
            den = min(padic_valuation(c, self.p) for c in x.den if c != 0)
            return Fraction(num - den)
        return Fraction(x.order())

    def value_group_contains(self, a: Fraction) -> bool:
        if self.kind in (TRIVIAL, FINITE_TRIVIAL):
            return a == 0
        return Fraction(a).denominator == 1

    # -- residue field ---------------------------------------------------------------

    def residue_field(self) -> "ValuedField":
        if self.kind == P_ADIC:
            return ValuedField(FINITE_TRIVIAL, self.p)
        if self.kind == FINITE_TRIVIAL:
            return self
        return ValuedField(TRIVIAL)

    def residue_field_is_infinite(self) -> bool:
        return self.kind in (TRIVIAL, T_ADIC, P_GAUSS)

    def residue(self, x, shift: Fraction):
        """Residue of x scaled down to valuation 0; x must have val(x) = shift."""
        if self.kind in (TRIVIAL, FINITE_TRIVIAL):
            return x
        if self.kind == P_ADIC:
            k = int(shift)
            q = x / Fraction(self.p) ** k
            return GFElement(self.p, q.numerator * pow(q.denominator, -1, self.p))
        if self.kind == P_GAUSS:
            raise NotImplementedError(
                "residue arithmetic over F_p(s) is not provided; convert the "
                "truncation to explicit circuits first"
            )
        return x.leading_residue()

    # -- elements with a prescribed valuation -------------------------------------------

    def element_with_valuation(self, a: Fraction, unit=1):
        """unit * uniformizer^a; a must lie in the value group."""
        a = Fraction(a)
        if not self.value_group_contains(a):
            raise ValueError(f"{a} is not in the value group of {self.kind}")
        if self.kind in (TRIVIAL, FINITE_TRIVIAL):
            return self.lift(unit)
        if self.kind == P_ADIC:
            return Fraction(unit) * Fraction(self.p) ** int(a)
        if self.kind == P_GAUSS:
            return _ratfunc(unit) * RatFunc.const(Fraction(self.p) ** int(a))
        return RatFunc.t_power(int(a), unit)

    def random_unit(self, rng):
        """A random valuation-zero rational, for generic lifts."""
        while True:
            num = rng.randint(-9973, 9973)
            den = rng.randint(1, 97)
            if num == 0:
                continue
            q = Fraction(num, den)
            if self.kind == P_ADIC and padic_valuation(q, self.p) != 0:
                continue
            return q

    def generic_unit(self):
        """A provably generic valuation-zero unit (the indeterminate s)."""
        if self.kind != P_GAUSS:
            raise ValueError("generic units exist only over the Gauss extension")
        return RatFunc.t_power(1)

    def gauss_extension(self) -> "ValuedField":
        if self.kind != P_ADIC:
            raise ValueError("Gauss extension is defined for p-adic fields")
        return ValuedField(P_GAUSS, self.p)

    def describe(self) -> str:
        if self.kind == P_ADIC:
            return f"p-adic:{self.p}"
        if self.kind == FINITE_TRIVIAL:
            return f"gf:{self.p}"
        if self.kind == P_GAUSS:
            return f"p-gauss:{self.p}"
        return self.kind


def field_from_spec(spec: str) -> ValuedField:
    spec = spec.strip()
    if spec == TRIVIAL:
        return ValuedField(TRIVIAL)
    if spec == T_ADIC:
        return ValuedField(T_ADIC)
    if spec.startswith("p-adic:"):
        return ValuedField(P_ADIC, int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown field spec {spec!r}")
