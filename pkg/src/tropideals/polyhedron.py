"""Exact rational polyhedra in H-representation, canonicalized so that
equality of canonical forms is equality of point sets: implicit equalities
are promoted, the equation system is reduced, inequality normals are
reduced modulo the equation space, scaled primitive, and irredundant.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import lp
from .lattice import integer_kernel_basis, primitive


def _norm_eq(a, b):
    """Primitive-integer scaling of a·x = b with deterministic sign."""
    a = [Fraction(x) for x in a]
    b = Fraction(b)
    if all(x == 0 for x in a):
        return None  # 0 = b: caller checks b
    p = primitive(a)
    scale = next(Fraction(y) / x for x, y in zip(a, p) if x != 0)
    first = next(x for x in p if x != 0)
    if first < 0:
        p = tuple(-v for v in p)
        scale = -scale
    return p, b * scale


_canon_cache: dict = {}


def _prenormalize(nvars, ineqs, eqs):
    """LP-free normalization (primitive scaling, dedup) used as a cache key."""
    key_in = {}
    for a, b in ineqs:
        if all(x == 0 for x in a):
            if b < 0:
                return None  # trivially infeasible marker handled by caller
            continue
        p = primitive(a)
        scale = next(Fraction(y) / x for x, y in zip(a, p) if x != 0)
        b2 = b * scale
        if p in key_in:
            key_in[p] = min(key_in[p], b2)
        else:
            key_in[p] = b2
    key_eq = set()
    for a, b in eqs:
        norm = _norm_eq(a, b)
        if norm is None:
            if b != 0:
                return None
            continue
        key_eq.add(norm)
    return (nvars, tuple(sorted(key_in.items())), tuple(sorted(key_eq)))


class Polyhedron:
    """Canonical H-representation; immutable after construction."""

    __slots__ = ("nvars", "eqs", "ineqs", "_empty", "_dim", "_relint", "_hash")

    def __init__(self, nvars: int, ineqs=(), eqs=(), _canonical=False):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_hash", None)
        ineqs = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
        eqs = [([Fraction(x) for x in a], Fraction(b)) for a, b in eqs]
        for a, _ in ineqs + eqs:
            if len(a) != nvars:
                raise ValueError("constraint arity mismatch")
        key = _prenormalize(nvars, ineqs, eqs)
        if key is not None and key in _canon_cache:
            empty, ceqs, cineqs, dim, relint = _canon_cache[key]
            setattr_ = object.__setattr__
            setattr_(self, "_empty", empty)
            setattr_(self, "eqs", ceqs)
            setattr_(self, "ineqs", cineqs)
            setattr_(self, "_dim", dim)
            setattr_(self, "_relint", relint)
            return
        if key is None:
            # syntactically infeasible (0 <= b with b < 0, or 0 = b != 0)
            self._store_empty()
            return
        self._canonicalize(ineqs, eqs)
        _canon_cache[key] = (self._empty, self.eqs, self.ineqs, self._dim, self._relint)

    def __setattr__(self, *_):
        raise AttributeError("Polyhedron is immutable")

    def _store_empty(self):
        setattr_ = object.__setattr__
        setattr_(self, "_empty", True)
        setattr_(self, "eqs", ())
        setattr_(self, "ineqs", ())
        setattr_(self, "_dim", -1)
        setattr_(self, "_relint", None)

    # -- canonicalization -------------------------------------------------------

    def _canonicalize(self, ineqs, eqs):
        setattr_ = object.__setattr__
        if not lp.feasible(self.nvars, ineqs, eqs):
            self._store_empty()
            return
        setattr_(self, "_empty", False)
        # fast path: one LP deciding whether any inequality is implicit
        genuine = []
        if ineqs:
            n = self.nvars
            relint_ineqs = [(list(a) + [1], b) for a, b in ineqs] + [([0] * n + [1], 1)]
            relint_eqs = [(list(a) + [0], b) for a, b in eqs]
            res = lp.maximize(n + 1, [0] * n + [1], relint_ineqs, relint_eqs)
            if res.status == lp.OPTIMAL and res.value > 0:
                genuine = list(ineqs)
                ineqs = []
        # promote implicit equalities
        for a, b in ineqs:
            res = lp.minimize(self.nvars, a, ineqs, eqs)
            if res.status == lp.OPTIMAL and res.value == b:
                eqs.append((a, b))
            else:
                genuine.append((a, b))
        # reduce the equation system (rational RREF, primitive rows)
        red = []
        pivots = []
        for a, b in eqs:
            row = list(a) + [b]
            for r, c in zip(red, pivots):
                if row[c] != 0:
                    f = row[c]
                    row = [x - f * y for x, y in zip(row, r)]
            piv = next((c for c in range(self.nvars) if row[c] != 0), None)
            if piv is None:
                continue  # 0 = 0 (feasible, so b reduced to 0)
            inv = 1 / row[piv]
            row = [x * inv for x in row]
            red.append(row)
            pivots.append(piv)
        for i in range(len(red) - 1, -1, -1):
            for j in range(i):
                if red[j][pivots[i]] != 0:
                    f = red[j][pivots[i]]
                    red[j] = [x - f * y for x, y in zip(red[j], red[i])]
        eq_canon = []
        for row in red:
            norm = _norm_eq(row[:-1], row[-1])
            eq_canon.append((norm[0], norm[1]))
        eq_canon.sort()
        # reduce inequality normals modulo the equation space, normalize, dedup
        seen = {}
        for a, b in genuine:
            row = list(a) + [b]
            for r, c in zip(red, pivots):
                if row[c] != 0:
                    f = row[c]
                    row = [x - f * y for x, y in zip(row, r)]
            a2, b2 = row[:-1], row[-1]
            if all(x == 0 for x in a2):
                continue
            p = primitive(a2)
            scale = next(Fraction(y) / x for x, y in zip(a2, p) if x != 0)
            b2 = b2 * scale
            if p in seen:
                seen[p] = min(seen[p], b2)
            else:
                seen[p] = b2
        kept = sorted(seen.items())
        # remove redundant inequalities one at a time
        irredundant = list(kept)
        i = 0
        while i < len(irredundant):
            a, b = irredundant[i]
            rest = irredundant[:i] + irredundant[i + 1 :]
            res = lp.maximize(self.nvars, a, rest, eq_canon)
            if res.status == lp.OPTIMAL and res.value <= b:
                irredundant = rest
            else:
                i += 1
        setattr_(self, "eqs", tuple((tuple(a), b) for a, b in eq_canon))
        setattr_(self, "ineqs", tuple((tuple(a), b) for a, b in irredundant))
        setattr_(self, "_dim", self.nvars - len(eq_canon))
        setattr_(self, "_relint", None)

    # -- queries ---------------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self._empty

    def dim(self) -> int:
        return self._dim

    def relint_point(self) -> tuple:
        """A rational point in the relative interior."""
        if self._empty:
            raise ValueError("empty polyhedron has no relative interior")
        if self._relint is not None:
            return self._relint
        n = self.nvars
        if not self.ineqs:
            res = lp.solve_lp(n, [0] * n, [], list(self.eqs), maximize=False)
            pt = tuple(res.point)
        else:
            # max eps <= 1 with a·x + eps <= b
            ineqs = [(list(a) + [1], b) for a, b in self.ineqs] + [([0] * n + [1], 1)]
            eqs = [(list(a) + [0], b) for a, b in self.eqs]
            res = lp.maximize(n + 1, [0] * n + [1], ineqs, eqs)
            assert res.status == lp.OPTIMAL and res.value > 0, "canonical form violated"
            pt = tuple(res.point[:n])
        object.__setattr__(self, "_relint", pt)
        return pt

    def contains_point(self, pt) -> bool:
        if self._empty:
            return False
        pt = [Fraction(x) for x in pt]
        return all(
            sum(ai * xi for ai, xi in zip(a, pt)) <= b for a, b in self.ineqs
        ) and all(sum(ai * xi for ai, xi in zip(a, pt)) == b for a, b in self.eqs)

    def relint_contains_point(self, pt) -> bool:
        if not self.contains_point(pt):
            return False
        pt = [Fraction(x) for x in pt]
        return all(sum(ai * xi for ai, xi in zip(a, pt)) < b for a, b in self.ineqs)

    def contains_poly(self, other: "Polyhedron") -> bool:
        if other._empty:
            return True
        if self._empty:
            return False
        o_ineqs, o_eqs = list(other.ineqs), list(other.eqs)
        for a, b in self.ineqs:
            res = lp.maximize(self.nvars, a, o_ineqs, o_eqs)
            if res.status != lp.OPTIMAL or res.value > b:
                return False
        for a, b in self.eqs:
            for obj, bound in ((a, b), ([-x for x in a], -b)):
                res = lp.maximize(self.nvars, obj, o_ineqs, o_eqs)
                if res.status != lp.OPTIMAL or res.value > bound:
                    return False
        return True

    def is_face_of(self, other: "Polyhedron") -> bool:
        """Is self a face of other (including other itself)?"""
        if self._empty:
            return True
        if not other.contains_poly(self):
            return False
        # the minimal face of other containing a relative-interior point of
        # self: turn the inequalities of other active there into equalities
        w = self.relint_point()
        active = [
            (a, b)
            for a, b in other.ineqs
            if sum(ai * xi for ai, xi in zip(a, w)) == b
        ]
        minimal_face = Polyhedron(
            self.nvars, list(other.ineqs), list(other.eqs) + list(active)
        )
        return minimal_face == self

    # -- constructions ---------------------------------------------------------------------

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if self.nvars != other.nvars:
            raise ValueError("dimension mismatch")
        return Polyhedron(
            self.nvars,
            list(self.ineqs) + list(other.ineqs),
            list(self.eqs) + list(other.eqs),
        )

    def recession(self) -> "Polyhedron":
        """{x : Ax <= 0, Cx = 0}; empty input gives the empty cone."""
        if self._empty:
            return self
        return Polyhedron(
            self.nvars,
            [(a, 0) for a, _ in self.ineqs],
            [(a, 0) for a, _ in self.eqs],
        )

    def tangent_cone(self, w) -> "Polyhedron":
        """Directions v with w + eps*v in self for small eps > 0 (w in self)."""
        if not self.contains_point(w):
            raise ValueError("tangent cone base point outside the polyhedron")
        w = [Fraction(x) for x in w]
        active = [
            (a, 0) for a, b in self.ineqs if sum(ai * xi for ai, xi in zip(a, w)) == b
        ]
        return Polyhedron(self.nvars, active, [(a, 0) for a, _ in self.eqs])

    def translate(self, v) -> "Polyhedron":
        v = [Fraction(x) for x in v]
        return Polyhedron(
            self.nvars,
            [(a, b + sum(ai * vi for ai, vi in zip(a, v))) for a, b in self.ineqs],
            [(a, b + sum(ai * vi for ai, vi in zip(a, v))) for a, b in self.eqs],
        )

    def substitute_coordinate(self, i: int, value) -> "Polyhedron":
        """Pin x_i = value and drop that coordinate (exact projection on a slice)."""
        value = Fraction(value)
        ineqs = []
        for a, b in self.ineqs:
            ineqs.append((list(a[:i]) + list(a[i + 1 :]), b - a[i] * value))
        eqs = []
        for a, b in self.eqs:
            eqs.append((list(a[:i]) + list(a[i + 1 :]), b - a[i] * value))
        return Polyhedron(self.nvars - 1, ineqs, eqs)

    def proper_faces(self) -> list:
        """Faces obtained by turning one irredundant inequality into an equality."""
        out = []
        for a, b in self.ineqs:
            f = Polyhedron(self.nvars, list(self.ineqs), list(self.eqs) + [(a, b)])
            if not f.is_empty:
                out.append(f)
        return out

    def span_lattice_basis(self) -> list:
        """Saturated integer basis of the direction space of the affine hull."""
        if self._empty:
            raise ValueError("empty polyhedron")
        if not self.eqs:
            return [tuple(1 if j == i else 0 for j in range(self.nvars)) for i in range(self.nvars)]
        return integer_kernel_basis([a for a, _ in self.eqs])

    def is_cone(self) -> bool:
        return all(b == 0 for _, b in self.ineqs) and all(b == 0 for _, b in self.eqs)

    def lineality_dim(self) -> int:
        rows = [a for a, _ in self.eqs] + [a for a, _ in self.ineqs]
        if not rows:
            return self.nvars
        from .fields import ValuedField
        from .linalg import rank

        return self.nvars - rank([[Fraction(x) for x in r] for r in rows], ValuedField("trivial"))

    # -- identity ------------------------------------------------------------------------------

    def key(self):
        return (self.nvars, self._empty, self.eqs, self.ineqs)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.key()))
        return self._hash

    def __repr__(self):
        if self._empty:
            return f"Polyhedron(empty, n={self.nvars})"
        return f"Polyhedron(n={self.nvars}, dim={self._dim}, eqs={len(self.eqs)}, ineqs={len(self.ineqs)})"


def poly_from_point(pt) -> Polyhedron:
    pt = [Fraction(x) for x in pt]
    n = len(pt)
    eqs = []
    for i in range(n):
        a = [Fraction(0)] * n
        a[i] = Fraction(1)
        eqs.append((a, pt[i]))
    return Polyhedron(n, eqs=eqs)


def whole_space(n: int) -> Polyhedron:
    return Polyhedron(n)


def hyperplane_slice(n: int, i: int, value) -> Polyhedron:
    a = [Fraction(0)] * n
    a[i] = Fraction(1)
    return Polyhedron(n, eqs=[(a, value)])
