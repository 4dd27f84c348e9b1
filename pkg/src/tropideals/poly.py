"""Multivariate tropical (Laurent) polynomials over the min-plus semiring.

A TropPoly is a finite map from exponent vectors to finite rational
coefficients; the empty map is the infinite polynomial.  ``+`` and ``*``
are the tropical operations, matching TropScalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .semiring import INF, TropScalar, as_trop

ExpVec = tuple  # tuple[int, ...]

AFFINE = "affine"
LAURENT = "laurent"
PROJECTIVE = "projective"


def _default_names(kind: str, nvars: int) -> tuple:
    if kind == PROJECTIVE:
        return tuple(f"x{i}" for i in range(nvars))
    return tuple(f"x{i}" for i in range(1, nvars + 1))


@dataclass(frozen=True)
class Ambient:
    """Where a polynomial lives: Affine(n), Laurent(n), or Projective(n+1)."""

    kind: str
    nvars: int
    names: tuple = field(default=None)

    def __post_init__(self):
        if self.kind not in (AFFINE, LAURENT, PROJECTIVE):
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if self.names is None:
            object.__setattr__(self, "names", _default_names(self.kind, self.nvars))
        else:
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.nvars:
            raise ValueError("variable name count does not match nvars")

    def allows_exponent(self, u: ExpVec) -> bool:
        if self.kind == LAURENT:
            return True
        return all(e >= 0 for e in u)


def affine(n: int, names=None) -> Ambient:
    return Ambient(AFFINE, n, names)


def laurent(n: int, names=None) -> Ambient:
    return Ambient(LAURENT, n, names)


def projective(nvars: int, names=None) -> Ambient:
    return Ambient(PROJECTIVE, nvars, names)


def grlex_key(u: ExpVec):
    """Graded-lex sort key used for canonical term ordering in output."""
    return (sum(u), tuple(-e for e in u))


class TropPoly:
    """Sparse tropical polynomial.  Immutable after construction."""

    __slots__ = ("ambient", "terms", "_hash")

    def __init__(self, ambient: Ambient, terms):
        clean = {}
        n = ambient.nvars
        for u, c in dict(terms).items():
            u = tuple(int(e) for e in u)
            if len(u) != n:
                raise ValueError(f"exponent {u} has wrong length for n={n}")
            if not ambient.allows_exponent(u):
                raise ValueError(f"negative exponent {u} in {ambient.kind} ambient")
            c = as_trop(c)
            if c.is_inf:
                continue  # infinite coefficients are never stored
            if u in clean:
                clean[u] = min(clean[u], c.value)
            else:
                clean[u] = c.value
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)
        if ambient.kind == PROJECTIVE and clean:
            degs = {sum(u) for u in clean}
            if len(degs) > 1:
                raise ValueError("projective polynomial must be homogeneous")

    def __setattr__(self, name, val):
        raise AttributeError("TropPoly is immutable")

    # -- basic queries --------------------------------------------------------

    @property
    def is_inf(self) -> bool:
        return not self.terms

    @property
    def is_boolean(self) -> bool:
        return all(c == 0 for c in self.terms.values())

    def support(self):
        return set(self.terms)

    def coeff(self, u: ExpVec) -> TropScalar:
        c = self.terms.get(tuple(u))
        return INF if c is None else TropScalar(c)

    def degree(self) -> int:
        if self.is_inf:
            raise ValueError("degree of the infinite polynomial")
        return max(sum(u) for u in self.terms)

    def min_degree(self) -> int:
        if self.is_inf:
            raise ValueError("degree of the infinite polynomial")
        return min(sum(u) for u in self.terms)

    def is_homogeneous(self) -> bool:
        return self.is_inf or len({sum(u) for u in self.terms}) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- semiring structure ----------------------------------------------------

    def __add__(self, other: "TropPoly") -> "TropPoly":
        self._check_ambient(other)
        out = dict(self.terms)
        for u, c in other.terms.items():
            if u in out:
                out[u] = min(out[u], c)
            else:
                out[u] = c
        return TropPoly(self.ambient, out)

    def __mul__(self, other) -> "TropPoly":
        if isinstance(other, (TropScalar, int, Fraction)):
            return self.scalar_mul(other)
        self._check_ambient(other)
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = tuple(a + b for a, b in zip(u, v))
                c = cu + cv
                if w in out:
                    out[w] = min(out[w], c)
                else:
                    out[w] = c
        return TropPoly(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TropPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = monomial(self.ambient, (0,) * self.ambient.nvars)
        for _ in range(n):
            out = out * self
        return out

    def scalar_mul(self, c) -> "TropPoly":
        c = as_trop(c)
        if c.is_inf:
            return TropPoly(self.ambient, {})
        return TropPoly(self.ambient, {u: cu + c.value for u, cu in self.terms.items()})

    def shift(self, v: ExpVec) -> "TropPoly":
        """Multiply by the monomial x^v (v may be Laurent in a Laurent ambient)."""
        v = tuple(v)
        return TropPoly(
            self.ambient,
            {tuple(a + b for a, b in zip(u, v)): c for u, c in self.terms.items()},
        )

    def _check_ambient(self, other: "TropPoly"):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")

    # -- evaluation and initial forms ------------------------------------------

    def evaluate(self, w) -> TropScalar:
        """min over the support of c_u + w·u; INF for the empty polynomial."""
        w = [Fraction(x) for x in w]
        if len(w) != self.ambient.nvars:
            raise ValueError("weight vector length mismatch")
        best = None
        for u, c in self.terms.items():
            val = c + sum(wi * ui for wi, ui in zip(w, u))
            if best is None or val < best:
                best = val
        return INF if best is None else TropScalar(best)

    def initial_form(self, w) -> "TropPoly":
        """Boolean sum of the monomials achieving the minimum at w."""
        w = [Fraction(x) for x in w]
        if len(w) != self.ambient.nvars:
            raise ValueError("weight vector length mismatch")
        best = None
        argmin = []
        for u, c in self.terms.items():
            val = c + sum(wi * ui for wi, ui in zip(w, u))
            if best is None or val < best:
                best = val
                argmin = [u]
            elif val == best:
                argmin.append(u)
        return TropPoly(self.ambient, {u: 0 for u in argmin})

    def initial_form_composed(self, w, v) -> "TropPoly":
        """in_{w+eps*v}(f) for all small eps > 0, as in_v(in_w(f))."""
        return self.initial_form(w).initial_form(v)

    def trivialize(self) -> "TropPoly":
        return TropPoly(self.ambient, {u: 0 for u in self.terms})

    # -- homogenization ----------------------------------------------------------

    def homogenize(self, name: str = "x0") -> "TropPoly":
        """Affine -> Projective, new first variable absorbing the degree."""
        if self.ambient.kind != AFFINE:
            raise ValueError("homogenize expects an affine polynomial")
        amb = projective(self.ambient.nvars + 1, (name,) + self.ambient.names)
        if self.is_inf:
            return TropPoly(amb, {})
        d = self.degree()
        return TropPoly(amb, {(d - sum(u),) + u: c for u, c in self.terms.items()})

    def dehomogenize(self) -> "TropPoly":
        """Projective -> Affine, substituting 0 for the first variable."""
        if self.ambient.kind != PROJECTIVE:
            raise ValueError("dehomogenize expects a projective polynomial")
        amb = affine(self.ambient.nvars - 1, self.ambient.names[1:])
        out = {}
        for u, c in self.terms.items():
            v = u[1:]
            if v in out:
                out[v] = min(out[v], c)
            else:
                out[v] = c
        return TropPoly(amb, out)

    # -- specialization ------------------------------------------------------------

    def specialize(self, i: int, a) -> "TropPoly":
        """Substitute x_i = a; the new coefficient of x^{u'} is min_k (c + k*a)."""
        a = as_trop(a)
        n = self.ambient.nvars
        if not 0 <= i < n:
            raise ValueError("variable index out of range")
        if a.is_inf and any(u[i] < 0 for u in self.terms):
            raise ValueError("cannot specialize at infinity with negative exponents")
        names = self.ambient.names[:i] + self.ambient.names[i + 1 :]
        kind = self.ambient.kind if self.ambient.kind != PROJECTIVE else AFFINE
        amb = Ambient(kind, n - 1, names)
        out = {}
        for u, c in self.terms.items():
            k = u[i]
            if a.is_inf:
                if k > 0:
                    continue
                val = TropScalar(c)
            else:
                val = TropScalar(c) * (a ** k)
            v = u[:i] + u[i + 1 :]
            if v in out:
                out[v] = out[v] + val
            else:
                out[v] = val
        return TropPoly(amb, out)

    def substitute_scaled_var(self, i: int, j: int, a) -> "TropPoly":
        """Substitute x_i = a ⊙ x_j (i != j); stays homogeneous."""
        a = as_trop(a)
        if a.is_inf:
            raise ValueError("scaled substitution needs a finite scale")
        n = self.ambient.nvars
        names = self.ambient.names[:i] + self.ambient.names[i + 1 :]
        amb = Ambient(self.ambient.kind, n - 1, names)
        jj = j if j < i else j - 1
        out = {}
        for u, c in self.terms.items():
            k = u[i]
            v = list(u[:i] + u[i + 1 :])
            v[jj] += k
            v = tuple(v)
            val = TropScalar(c) * (a ** k)
            if v in out:
                out[v] = out[v] + val
            else:
                out[v] = val
        return TropPoly(amb, out)

    def map_exponents(self, matrix, shift=None, ambient: Ambient | None = None) -> "TropPoly":
        """Apply u -> M u (+ tropical scaling by shift·u) to every exponent."""
        n = self.ambient.nvars
        amb = ambient or self.ambient
        out = {}
        for u, c in self.terms.items():
            v = tuple(sum(matrix[r][k] * u[k] for k in range(n)) for r in range(len(matrix)))
            val = Fraction(c)
            if shift is not None:
                val += sum(Fraction(s) * e for s, e in zip(shift, u))
            if v in out:
                out[v] = min(out[v], val)
            else:
                out[v] = val
        return TropPoly(amb, out)

    # -- comparisons / hashing ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TropPoly):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.ambient, tuple(sorted(self.terms.items(), key=lambda t: grlex_key(t[0])))))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"TropPoly({format_poly(self)!r})"


def trop_poly(ambient: Ambient, terms) -> TropPoly:
    return TropPoly(ambient, terms)


def monomial(ambient: Ambient, u: ExpVec, c=0) -> TropPoly:
    return TropPoly(ambient, {tuple(u): c})


def inf_poly(ambient: Ambient) -> TropPoly:
    return TropPoly(ambient, {})


def tropical_sum(ambient: Ambient, polys: Iterable[TropPoly]) -> TropPoly:
    out = inf_poly(ambient)
    for p in polys:
        out = out + p
    return out


# -- monomial term orders ---------------------------------------------------------


class TermOrder:
    """Monomial term order with x^u ≺ x^0 for u != 0 (min convention).

    kind 'lex': x^u ≺ x^v iff the first nonzero entry of u-v is positive.
    kind 'revlex': x^u ≺ x^v iff deg u > deg v, or equal degrees and the
    last nonzero entry of u-v is negative.  An optional permutation gives
    the variable order: perm[k] is the index of the k-th variable.
    """

    def __init__(self, kind: str, n: int, perm=None):
        if kind not in ("lex", "revlex"):
            raise ValueError(f"unknown term order {kind!r}")
        self.kind = kind
        self.n = n
        self.perm = tuple(perm) if perm is not None else tuple(range(n))
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm must be a permutation of the variables")

    def compare(self, u: ExpVec, v: ExpVec) -> int:
        """-1 if x^u ≺ x^v, 0 if equal, 1 if x^u ≻ x^v."""
        u = tuple(u)
        v = tuple(v)
        if len(u) != self.n or len(v) != self.n:
            raise ValueError("exponent length mismatch")
        if any(e < 0 for e in u + v):
            raise ValueError("term orders compare monomials with nonnegative exponents")
        if u == v:
            return 0
        up = [u[i] for i in self.perm]
        vp = [v[i] for i in self.perm]
        if self.kind == "lex":
            for a, b in zip(up, vp):
                if a != b:
                    return -1 if a > b else 1
            return 0
        du, dv = sum(u), sum(v)
        if du != dv:
            return -1 if du > dv else 1
        for a, b in zip(reversed(up), reversed(vp)):
            if a != b:
                return -1 if a < b else 1
        return 0

    def min_monomial(self, monos) -> ExpVec:
        monos = list(monos)
        best = monos[0]
        for u in monos[1:]:
            if self.compare(u, best) < 0:
                best = u
        return best

    def sort(self, monos) -> list:
        import functools

        return sorted(monos, key=functools.cmp_to_key(self.compare))

    def __repr__(self):
        return f"TermOrder({self.kind}, n={self.n}, perm={self.perm})"


def lex(n: int, perm=None) -> TermOrder:
    return TermOrder("lex", n, perm)


def revlex(n: int, perm=None) -> TermOrder:
    return TermOrder("revlex", n, perm)


def initial_monomial(f: TropPoly, order: TermOrder) -> ExpVec:
    """The ≺-minimal monomial of the support (coefficients are ignored)."""
    if f.is_inf:
        raise ValueError("initial monomial of the infinite polynomial")
    if f.ambient.kind == LAURENT:
        raise ValueError("term orders apply to affine or projective polynomials")
    return order.min_monomial(f.terms)


# -- parsing and printing -----------------------------------------------------------
#
# Two surface syntaxes:
#   min(3x, 1+2x, x, 1)            classical min/plus/times view
#   x^3 oplus 1 odot x^2 oplus x   symbolic oplus/odot view ('*' joins variables)
# Rational literals are exact: 'p', '-p', 'p/q'; 'inf' is the infinite element.


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")


class _Tokens:
    SYMBOLS = ("(", ")", ",", "+", "-", "*", "/", "^")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks = []
        self._lex()
        self.i = 0

    def _lex(self):
        t = self.text
        i = 0
        while i < len(t):
            ch = t[i]
            if ch.isspace():
                i += 1
                continue
            if ch in self.SYMBOLS:
                self.toks.append((ch, ch, i))
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(t) and t[j].isdigit():
                    j += 1
                self.toks.append(("num", t[i:j], i))
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                    j += 1
                self.toks.append(("name", t[i:j], i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", i, t)
        self.toks.append(("end", "", len(t)))

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], self.text)
        return tok


def _collect_names(text: str) -> list:
    toks = _Tokens(text)
    names = []
    for kind, val, _ in toks.toks:
        if kind == "name" and val not in ("min", "inf", "oplus", "odot") and val not in names:
            names.append(val)
    return sorted(names)


class _LinExpr:
    """c + sum a_i x_i with integer a_i; the classical reading of a tropical monomial."""

    def __init__(self, const: Fraction, coeffs):
        self.const = const
        self.coeffs = dict(coeffs)

    @classmethod
    def number(cls, q):
        return cls(Fraction(q), {})

    @classmethod
    def var(cls, name):
        return cls(Fraction(0), {name: Fraction(1)})

    def add(self, other):
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, Fraction(0)) + v
        return _LinExpr(self.const + other.const, coeffs)

    def scale(self, q):
        return _LinExpr(self.const * q, {k: v * q for k, v in self.coeffs.items()})

    def mul(self, other, pos, text):
        if self.coeffs and other.coeffs:
            raise ParseError("nonlinear product inside min(...)", pos, text)
        if other.coeffs:
            self, other = other, self
        return self.scale(other.const)

    def to_term(self, names, pos, text):
        u = []
        for nm in names:
            a = self.coeffs.get(nm, Fraction(0))
            if a.denominator != 1:
                raise ParseError(f"non-integer exponent for {nm}", pos, text)
            u.append(int(a))
        return tuple(u), self.const


class _MinParser:
    """expr := term (('+'|'-') term)*;  term := factor ('*' factor)*;
    factor := number | name | '(' expr ')'"""

    def __init__(self, toks, names, text):
        self.toks = toks
        self.names = names
        self.text = text

    def parse_expr(self):
        node = self.parse_term()
        while self.toks.peek()[0] in ("+", "-"):
            op, _, pos = self.toks.next()
            rhs = self.parse_term()
            node = node.add(rhs if op == "+" else rhs.scale(Fraction(-1)))
        return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            kind, _, pos = self.toks.peek()
            if kind == "*":
                self.toks.next()
                node = node.mul(self.parse_factor(), pos, self.text)
            elif kind in ("num", "name", "("):
                # implicit multiplication, e.g. 3x or 2(x+1)
                node = node.mul(self.parse_factor(), pos, self.text)
            else:
                return node

    def parse_factor(self):
        kind, val, pos = self.toks.next()
        if kind == "-":
            return self.parse_factor().scale(Fraction(-1))
        if kind == "num":
            q = Fraction(int(val))
            if self.toks.peek()[0] == "/":
                self.toks.next()
                den = self.toks.expect("num")
                q = Fraction(int(val), int(den[1]))
            return _LinExpr.number(q)
        if kind == "name":
            if val in ("min", "inf", "oplus", "odot"):
                raise ParseError(f"unexpected {val!r} inside min(...)", pos, self.text)
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return _LinExpr.var(val)
        if kind == "(":
            node = self.parse_expr()
            self.toks.expect(")")
            return node
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


class _TropParser:
    """poly := term ('oplus' term)*
    term := atom (('odot'|'*') atom)*
    atom := rational | 'inf' | var ('^' int)? | '(' poly ')'"""

    def __init__(self, toks, ambient, text):
        self.toks = toks
        self.ambient = ambient
        self.text = text

    def parse_poly(self) -> TropPoly:
        poly = self.parse_term()
        while self.toks.peek()[:2] == ("name", "oplus"):
            self.toks.next()
            poly = poly + self.parse_term()
        return poly

    def parse_term(self) -> TropPoly:
        poly = self.parse_atom()
        while True:
            kind, val, _ = self.toks.peek()
            if (kind, val) == ("name", "odot") or kind == "*":
                self.toks.next()
                poly = poly * self.parse_atom()
            elif kind == "name" and val != "oplus":
                poly = poly * self.parse_atom()
            else:
                return poly

    def parse_atom(self) -> TropPoly:
        kind, val, pos = self.toks.next()
        zero = (0,) * self.ambient.nvars
        if kind == "-":
            atom = self.parse_atom()
            if len(atom.terms) != 1 or set(atom.terms) != {zero}:
                raise ParseError("'-' applies to rational constants only", pos, self.text)
            return monomial(self.ambient, zero, -atom.terms[zero])
        if kind == "num":
            q = Fraction(int(val))
            if self.toks.peek()[0] == "/":
                self.toks.next()
                q = Fraction(int(val), int(self.toks.expect("num")[1]))
            return monomial(self.ambient, zero, q)
        if kind == "name":
            if val == "inf":
                return inf_poly(self.ambient)
            if val in ("oplus", "odot", "min"):
                raise ParseError(f"unexpected {val!r}", pos, self.text)
            if val not in self.ambient.names:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            i = self.ambient.names.index(val)
            e = 1
            if self.toks.peek()[0] == "^":
                self.toks.next()
                neg = False
                if self.toks.peek()[0] == "-":
                    self.toks.next()
                    neg = True
                e = int(self.toks.expect("num")[1])
                if neg:
                    e = -e
            u = list(zero)
            u[i] = e
            return monomial(self.ambient, tuple(u), 0)
        if kind == "(":
            poly = self.parse_poly()
            self.toks.expect(")")
            return poly
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_poly(text: str, ambient: Ambient | None = None, kind: str = AFFINE) -> TropPoly:
    """Parse either surface syntax; variables inferred (sorted) when no ambient given."""
    toks = _Tokens(text)
    if ambient is None:
        names = _collect_names(text)
        if not names:
            names = ["x"]
        ambient = Ambient(kind, len(names), tuple(names))
    first = toks.peek()
    if first[:2] == ("name", "min"):
        toks.next()
        toks.expect("(")
        parser = _MinParser(toks, ambient.names, text)
        parts = [parser.parse_expr()]
        while toks.peek()[0] == ",":
            toks.next()
            parts.append(parser.parse_expr())
        toks.expect(")")
        toks.expect("end")
        terms = {}
        for part in parts:
            u, c = part.to_term(ambient.names, 0, text)
            if u in terms:
                terms[u] = min(terms[u], c)
            else:
                terms[u] = c
        return TropPoly(ambient, terms)
    parser = _TropParser(toks, ambient, text)
    poly = parser.parse_poly()
    toks.expect("end")
    return poly


def format_monomial(u: ExpVec, names) -> str:
    parts = []
    for e, nm in zip(u, names):
        if e == 0:
            continue
        parts.append(nm if e == 1 else f"{nm}^{e}")
    return "*".join(parts)


def format_poly(f: TropPoly) -> str:
    """Canonical symbolic form; terms sorted by graded-lex on exponents."""
    if f.is_inf:
        return "inf"
    parts = []
    for u in sorted(f.terms, key=grlex_key):
        c = f.terms[u]
        mono = format_monomial(u, f.ambient.names)
        if not mono:
            parts.append(str(c))
        elif c == 0:
            parts.append(mono)
        else:
            coef = str(c) if (c > 0 or c.denominator != 1) else f"({c})"
            if c < 0:
                coef = f"({c})"
            parts.append(f"{coef} odot {mono}")
    return " oplus ".join(parts)
