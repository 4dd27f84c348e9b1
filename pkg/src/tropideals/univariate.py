"""Univariate tropical polynomials: convexification, linear factorization,
root multiplicities, and divisibility of convexifications.

The convexification replaces every coefficient by the value of the lower
convex hull of the lifted points (exponent, coefficient); successive
differences of hull coefficients are the roots with multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .semiring import INF, TropScalar, as_trop
from .poly import TropPoly, LAURENT


def _check_univariate(f: TropPoly) -> None:
    if f.ambient.nvars != 1:
        raise ValueError("univariate operation on multivariate polynomial")
    if f.is_inf:
        raise ValueError("univariate operation on the infinite polynomial")


def _hull_coefficients(f: TropPoly) -> dict:
    """Lower-hull value at every integer exponent between min and max."""
    pts = sorted((u[0], c) for u, c in f.terms.items())
    lo, hi = pts[0][0], pts[-1][0]
    # Andrew-style monotone scan for the lower hull of (exponent, coeff)
    hull = []
    for x, y in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop hull[-1] unless it lies strictly below segment hull[-2]->(x,y)
            if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    out = {}
    seg = 0
    for j in range(lo, hi + 1):
        while seg + 1 < len(hull) and hull[seg + 1][0] < j:
            seg += 1
        if hull[seg][0] == j:
            out[j] = hull[seg][1]
            continue
        (x1, y1), (x2, y2) = hull[seg], hull[seg + 1]
        out[j] = y1 + (y2 - y1) * Fraction(j - x1, x2 - x1)
    return out


def convexify(f: TropPoly) -> TropPoly:
    """Coefficientwise-minimal polynomial defining the same function as f."""
    _check_univariate(f)
    return TropPoly(f.ambient, {(j,): c for j, c in _hull_coefficients(f).items()})


@dataclass(frozen=True)
class UniFactorization:
    """unit ⊙ x^power_of_x ⊙ prod (x ⊕ w_i)^{m_i}, expanding to the convexification."""

    unit: TropScalar
    roots: tuple  # ((TropScalar root, int multiplicity), ...) strictly increasing
    power_of_x: int

    def expand(self, ambient) -> TropPoly:
        from .poly import monomial

        out = monomial(ambient, (self.power_of_x,), self.unit)
        for w, m in self.roots:
            lin = TropPoly(ambient, {(1,): 0, (0,): w})
            out = out * lin ** m
        return out

    def multiplicity(self, w) -> int:
        w = as_trop(w)
        for root, m in self.roots:
            if root == w:
                return m
        return 0

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)


def factor(f: TropPoly) -> UniFactorization:
    """Read roots with multiplicity off the Newton-polygon hull slopes."""
    _check_univariate(f)
    hull = _hull_coefficients(f)
    lo, hi = min(hull), max(hull)
    unit = TropScalar(hull[hi])
    diffs = [hull[k] - hull[k + 1] for k in range(lo, hi)]
    roots = []
    for w in diffs:
        if roots and roots[-1][0] == w:
            roots[-1] = (w, roots[-1][1] + 1)
        else:
            roots.append((w, 1))
    roots.sort(key=lambda t: t[0])
    if f.ambient.kind != LAURENT and lo < 0:
        raise ValueError("negative exponent outside a Laurent ambient")
    return UniFactorization(
        unit=unit,
        roots=tuple((TropScalar(w), m) for w, m in roots),
        power_of_x=lo,
    )


def mult_at(f: TropPoly, w) -> int:
    """Multiplicity of the root w; 0 if w is not a root."""
    w = as_trop(w)
    if w.is_inf:
        raise ValueError("multiplicity at infinity is not defined here")
    return factor(f).multiplicity(w)


def roots(f: TropPoly) -> list:
    """Roots (finite breakpoints) with multiplicities, sorted increasing."""
    return [(w, m) for w, m in factor(f).roots]


def divides(f: TropPoly, g: TropPoly) -> bool:
    """True iff the root multiset (and x-shift) of convexify(f) is contained in g's."""
    _check_univariate(f)
    _check_univariate(g)
    ff, fg = factor(f), factor(g)
    if ff.power_of_x > fg.power_of_x:
        return False
    for w, m in ff.roots:
        if fg.multiplicity(w) < m:
            return False
    return True
