"""Degree-truncated homogeneous tropical ideals.

The internal canonical form is projective: affine ideals are homogenized
(with a fresh first variable) and Laurent ideals are contracted to the
affine semiring and saturated first.  Realizable truncations keep exact
per-degree row spaces over the valued field; everything tropical is
derived from them.  Explicit truncations carry generating vector lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import linalg
from .config import check_guard, circuit_guard
from .fields import ValuedField
from .poly import (
    AFFINE,
    Ambient,
    LAURENT,
    PROJECTIVE,
    TermOrder,
    TropPoly,
    affine,
    monomial as trop_monomial,
    projective,
)
from .polyhedron import Polyhedron
from .semiring import INF, TropScalar
from .univariate import convexify
from .vmatroid import (
    VMatroid,
    check_monomial_elimination,
    eliminate,
    EliminationError,
    elimination_candidate,
    is_vector,
    normalize_vector,
    vector_sort_key,
)


def monomials_of_degree(nvars: int, d: int) -> list:
    """Degree-d exponent vectors, descending lexicographic."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        u = [0] * nvars
        for i in combo:
            u[i] += 1
        out.append(tuple(u))
    out.sort(key=lambda u: tuple(-e for e in u))
    return out


def monomials_up_to_degree(nvars: int, d: int) -> list:
    out = []
    for e in range(d + 1):
        out.extend(monomials_of_degree(nvars, e))
    return out


# -- classical polynomials (coefficient dictionaries over a valued field) -------------


def poly_degree(g: dict) -> int:
    return max(sum(u) for u in g)


def poly_is_homogeneous(g: dict) -> bool:
    return len({sum(u) for u in g}) <= 1


def poly_shift(g: dict, v) -> dict:
    v = tuple(v)
    return {tuple(a + b for a, b in zip(u, v)): c for u, c in g.items()}


def poly_homogenize_classical(g: dict, target_degree: int | None = None) -> dict:
    """Prepend a homogenizing exponent so every term reaches target_degree."""
    d = poly_degree(g)
    if target_degree is None:
        target_degree = d
    if target_degree < d:
        raise ValueError("target degree below the polynomial degree")
    return {(target_degree - sum(u),) + u: c for u, c in g.items()}


def tropicalize_classical(g: dict, field: ValuedField, ambient: Ambient) -> TropPoly:
    terms = {}
    for u, c in g.items():
        if field.is_zero(c):
            continue
        terms[u] = field.val(c)
    return TropPoly(ambient, terms)


@dataclass(frozen=True)
class Realization:
    """Classical generators over a valued field, in the user's ambient."""

    field: ValuedField
    generators: tuple  # tuple of coefficient dicts
    ambient: Ambient

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(dict(g) for g in self.generators))
        if self.ambient.kind == PROJECTIVE:
            for g in self.generators:
                if not poly_is_homogeneous(g):
                    raise ValueError("projective realization needs homogeneous generators")

    def nonzero_generators(self):
        out = []
        for g in self.generators:
            g = {u: c for u, c in g.items() if not self.field.is_zero(c)}
            if g:
                out.append(g)
        return out


class DegreePart:
    """One graded piece: a row space over the field, or generating vectors."""

    def __init__(self, ground, ambient, matrix=None, field=None, gens=None):
        self.ground = [tuple(u) for u in ground]
        self.ambient = ambient
        self.matrix = matrix
        self.field = field
        self.gens = None if gens is None else [normalize_vector(g) for g in gens if not g.is_inf]
        self._matroid = None

    @property
    def is_realizable(self) -> bool:
        return self.matrix is not None

    def matroid(self) -> VMatroid:
        if self._matroid is None:
            if self.matrix is not None:
                self._matroid = VMatroid.from_rowspace(self.matrix, self.ground, self.ambient, self.field)
            else:
                self._matroid = VMatroid.from_circuits(self.ground, _minimal_support_gens(self.gens), self.ambient)
        return self._matroid

    def rank(self) -> int:
        if self.matrix is not None:
            return len(self.ground) - len(self.matrix)
        return self.matroid().rank

    def circuits(self) -> list:
        return self.matroid().circuits()

    def contains(self, v: TropPoly) -> bool:
        return is_vector(self.circuits(), normalize_vector(v)) if not v.is_inf else True

    def vectors_supported_on(self, monos) -> "DegreePart":
        """The subspace of vectors supported on the given monomials."""
        monos = [tuple(u) for u in monos]
        keep = set(monos)
        if self.matrix is not None:
            cols = [i for i, u in enumerate(self.ground) if u in keep]
            rows = linalg.supported_subspace(self.matrix, cols, self.field)
            sub = [[row[c] for c in cols] for row in rows]
            return DegreePart([self.ground[c] for c in cols], self.ambient, matrix=sub, field=self.field)
        gens = [g for g in self.gens or [] for _ in [0] if set(g.terms) <= keep]
        # fall back to circuits when gens are absent
        if self.gens is None:
            gens = [c for c in self.circuits() if set(c.terms) <= keep]
        ground = [u for u in self.ground if u in keep]
        return DegreePart(ground, self.ambient, gens=gens)


def _minimal_support_gens(gens) -> list:
    """Support-minimal normalized generators (the circuits of their span).

    Distinct vectors may share a non-minimal support; only a conflict among
    support-minimal ones violates the valuated circuit axioms.
    """
    keys = [frozenset(g.terms) for g in gens]
    key_set = set(keys)
    minimal = {k for k in key_set if not any(k2 < k for k2 in key_set)}
    seen = {}
    for g, k in zip(gens, keys):
        if k not in minimal:
            continue
        if k in seen and seen[k] != g:
            raise ValueError("two support-minimal vectors share a support but differ")
        seen[k] = g
    return sorted(seen.values(), key=vector_sort_key)


class TruncationError(RuntimeError):
    pass


class IdealTruncation:
    """A homogeneous tropical ideal presented degree-by-degree up to D."""

    def __init__(self, user_ambient, proj_ambient, D, parts, provenance,
                 realization=None, field=None, caveats=()):
        self.user_ambient = user_ambient
        self.proj = proj_ambient
        self.D = D
        self.parts = parts  # dict: degree -> DegreePart
        self.provenance = provenance  # "realizable" | "derived" | "explicit"
        self.realization = realization
        self.field = field
        self.caveats = tuple(caveats)

    @property
    def nvars_proj(self) -> int:
        return self.proj.nvars

    def part(self, d: int) -> DegreePart:
        if d not in self.parts:
            raise TruncationError(f"degree {d} exceeds the stored truncation (D={self.D})")
        return self.parts[d]

    def circuits(self, d: int) -> list:
        return self.part(d).circuits()

    def circuits_up_to(self, dmax: int | None = None) -> list:
        dmax = self.D if dmax is None else dmax
        out = []
        for d in range(dmax + 1):
            out.extend(self.circuits(d))
        return out

    def with_caveat(self, note: str) -> "IdealTruncation":
        if note in self.caveats:
            return self
        return IdealTruncation(
            self.user_ambient, self.proj, self.D, self.parts, self.provenance,
            self.realization, self.field, self.caveats + (note,),
        )

    def __repr__(self):
        return (
            f"IdealTruncation({self.user_ambient.kind}({len(self.user_ambient.names)}), "
            f"D={self.D}, provenance={self.provenance})"
        )


# -- construction: tropicalization of classical ideals -----------------------------------


def _affine_space_rows(gens, field, nvars, max_degree):
    """Rows spanning J_{<=d} on the affine monomials of degree <= max_degree."""
    ground = monomials_up_to_degree(nvars, max_degree)
    index = {u: i for i, u in enumerate(ground)}
    rows = []
    for g in gens:
        dg = poly_degree(g)
        for e in range(max_degree - dg + 1):
            for v in monomials_of_degree(nvars, e):
                shifted = poly_shift(g, v)
                row = [field.zero] * len(ground)
                for u, c in shifted.items():
                    row[index[u]] = row[index[u]] + c
                rows.append(row)
    basis, _ = linalg.rref(rows, field)
    return ground, basis


def _colon_affine(ground, rows, field, m: tuple):
    """{f : x^m f in span(rows)}, as rows on the smaller affine ground."""
    index = {u: i for i, u in enumerate(ground)}
    divisible = [i for i, u in enumerate(ground) if all(a >= b for a, b in zip(u, m))]
    sub = linalg.supported_subspace(rows, divisible, field)
    new_ground = [tuple(a - b for a, b in zip(ground[i], m)) for i in divisible]
    out = [[row[i] for i in divisible] for row in sub]
    return new_ground, out


def _restrict_rows(ground, rows, field, target_ground):
    """Rows restricted to a sub-ground (entries outside must vanish)."""
    index = {u: i for i, u in enumerate(ground)}
    keep = [index[u] for u in target_ground]
    out = []
    for row in rows:
        for i, x in enumerate(row):
            if i not in keep and not field.is_zero(x):
                raise ValueError("row not supported on the target ground")
        out.append([row[i] for i in keep])
    return out


def tropicalize(real: Realization, D: int, saturation_headroom: int = 0) -> IdealTruncation:
    """Degree truncation of the tropicalization of a classical ideal.

    Laurent ideals are contracted to the affine semiring and saturated by
    the product of the variables (within headroom; stabilization checked).
    """
    field = real.field
    gens = real.nonzero_generators()
    kind = real.ambient.kind
    n = real.ambient.nvars
    maxdeg = max((poly_degree(g) for g in gens), default=0)
    if kind == PROJECTIVE and D < maxdeg and gens:
        raise ValueError("degree bound below the generator degrees")

    if kind == PROJECTIVE:
        proj = real.ambient
        parts = {}
        for d in range(D + 1):
            ground = monomials_of_degree(n, d)
            index = {u: i for i, u in enumerate(ground)}
            rows = []
            for g in gens:
                dg = poly_degree(g)
                if dg > d:
                    continue
                for v in monomials_of_degree(n, d - dg):
                    row = [field.zero] * len(ground)
                    for u, c in poly_shift(g, v).items():
                        row[index[u]] = row[index[u]] + c
                    rows.append(row)
            basis, _ = linalg.rref(rows, field)
            parts[d] = DegreePart(ground, proj, matrix=basis, field=field)
        return IdealTruncation(real.ambient, proj, D, parts, "realizable", real, field)

    if kind == LAURENT:
        # clear denominators: generators become affine; saturate by prod(x_i)
        cleared = []
        for g in gens:
            mins = [min(u[i] for u in g) for i in range(n)]
            shift = tuple(-min(0, mi) for mi in mins)
            cleared.append(poly_shift(g, shift))
        m = tuple([1] * n)
        extra = max(2 * n, saturation_headroom)
        big = D + extra
        ground, rows = _affine_space_rows(cleared, field, n, big)
        level = (ground, rows)
        budget = big
        prev_key = None
        while budget - n >= D:
            nxt = _colon_affine(level[0], level[1], field, m)
            budget -= n
            # compare the two levels on degrees <= budget
            keep = [u for u in nxt[0] if sum(u) <= budget]
            cur = _restrict_basis(level, keep, field)
            new = _restrict_basis(nxt, keep, field)
            level = nxt
            if cur == new:
                prev_key = True
                break
        if prev_key is None:
            raise TruncationError(
                "torus saturation did not stabilize within the headroom; raise D or headroom"
            )
        return _tropicalize_affine_spaces(level[0], level[1], field, n, D, real.ambient, real)

    # affine: rows of degree d are homogenizations of J_{<= d}
    ground_all, rows_all = _affine_space_rows(gens, field, n, D)
    return _tropicalize_affine_spaces(ground_all, rows_all, field, n, D, real.ambient, real)


def _restrict_basis(level, keep, field):
    """Canonical fingerprint of the degree-filtered subspace on `keep`."""
    ground, rows = level
    index = {u: i for i, u in enumerate(ground)}
    cols = [index[u] for u in keep]
    sub = linalg.supported_subspace(rows, cols, field)
    reduced = [[row[c] for c in cols] for row in sub]
    basis, _ = linalg.rref(reduced, field)
    return [tuple(map(repr, row)) for row in basis]


def _basis_to_polys(level, field):
    ground, rows = level
    out = []
    for row in rows:
        out.append({u: c for u, c in zip(ground, row) if not field.is_zero(c)})
    return out


def _tropicalize_affine_spaces(ground_all, rows_all, field, n, D, user_ambient, real=None):
    """Homogenize per-degree filtered pieces of an affine row space."""
    proj = projective(n + 1, ("x0",) + tuple(user_ambient.names))
    index = {u: i for i, u in enumerate(ground_all)}
    parts = {}
    for d in range(D + 1):
        sub_ground = [u for u in ground_all if sum(u) <= d]
        cols = [index[u] for u in sub_ground]
        # elements of degree <= d: rows supported on the low-degree monomials
        rows = linalg.supported_subspace(rows_all, cols, field)
        ground_d = monomials_of_degree(n + 1, d)
        index_d = {u: i for i, u in enumerate(ground_d)}
        hom_rows = []
        for row in rows:
            out = [field.zero] * len(ground_d)
            for u in sub_ground:
                c = row[index[u]]
                if not field.is_zero(c):
                    uu = (d - sum(u),) + u
                    out[index_d[uu]] = out[index_d[uu]] + c
            hom_rows.append(out)
        basis, _ = linalg.rref(hom_rows, field)
        parts[d] = DegreePart(ground_d, proj, matrix=basis, field=field)
    prov_real = real if real is not None else None
    return IdealTruncation(user_ambient, proj, D, parts, "realizable", prov_real, field)


def explicit_truncation(user_ambient, circuits_by_degree: dict, D: int,
                        proj_ambient=None, caveats=()) -> IdealTruncation:
    """Build an explicit truncation from homogeneous circuit lists per degree."""
    n = user_ambient.nvars
    if user_ambient.kind == PROJECTIVE:
        proj = proj_ambient or user_ambient
    else:
        proj = proj_ambient or projective(n + 1, ("x0",) + tuple(user_ambient.names))
    parts = {}
    for d in range(D + 1):
        ground = monomials_of_degree(proj.nvars, d)
        gens = list(circuits_by_degree.get(d, ()))
        parts[d] = DegreePart(ground, proj, gens=gens)
    return IdealTruncation(user_ambient, proj, D, parts, "explicit", caveats=caveats)


def homogenize_user_poly(f: TropPoly, proj: Ambient, degree: int) -> TropPoly:
    """Homogenize an affine tropical polynomial into the given degree."""
    terms = {}
    for u, c in f.terms.items():
        terms[(degree - sum(u),) + u] = c
    return TropPoly(proj, terms)


# -- Hilbert function, polynomial, dimension, degree --------------------------------------


def hilbert_function(I: IdealTruncation, d: int) -> int:
    return I.part(d).rank()


def hilbert_values(I: IdealTruncation) -> list:
    return [hilbert_function(I, d) for d in range(I.D + 1)]


class StabilizationError(TruncationError):
    pass


def _difference_table(vals):
    rows = [list(vals)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    return rows


def hilbert_polynomial(I: IdealTruncation, window: int = 3):
    """Interpolated eventual polynomial of the Hilbert function.

    Returns (coefficients low-to-high, dimension).  The top `window`
    entries of the (e+1)-st finite differences must vanish; otherwise the
    truncation is too small and StabilizationError is raised.
    """
    vals = hilbert_values(I)
    rows = _difference_table(vals)
    for e in range(len(rows)):
        row = rows[e]
        tail = row[-window:] if len(row) >= window else None
        if tail is None:
            break
        if all(x == 0 for x in tail):
            if e == 0:
                return [Fraction(0)], -1
            # Newton forward form from the top e samples of rows[e-1]...
            deg = e - 1
            d0 = I.D - deg
            coeffs = [Fraction(0)] * (deg + 1)
            # P(d) = sum_j rows[j][d0] * C(d - d0, j)
            poly = [Fraction(0)] * (deg + 1)
            for j in range(deg + 1):
                binom = _falling_binomial(d0, j, deg)
                c = Fraction(rows[j][d0])
                poly = [a + c * b for a, b in zip(poly, binom)]
            return poly, deg
    raise StabilizationError(
        f"Hilbert function did not stabilize in the top {window} degrees; raise D"
    )


def _falling_binomial(d0: int, j: int, deg: int):
    """Coefficients of C(d - d0, j) as a polynomial in d, padded to deg+1."""
    poly = [Fraction(1)]
    for k in range(j):
        shift = Fraction(-(d0 + k))
        # poly <- poly * (d + shift)
        times_d = [Fraction(0)] + poly
        times_c = [shift * c for c in poly] + [Fraction(0)]
        poly = [a + b for a, b in zip(times_d, times_c)]
    fact = 1
    for k in range(1, j + 1):
        fact *= k
    poly = [c / fact for c in poly]
    return poly + [Fraction(0)] * (deg + 1 - len(poly))


def dimension(I: IdealTruncation, window: int = 3) -> int:
    """Degree of the Hilbert polynomial; -1 for the empty/unit ideal."""
    return hilbert_polynomial(I, window)[1]


def degree(I: IdealTruncation, window: int = 3) -> int:
    """d! times the leading coefficient of the Hilbert polynomial."""
    coeffs, dim = hilbert_polynomial(I, window)
    if dim < 0:
        return 0
    lead = coeffs[dim]
    fact = 1
    for k in range(1, dim + 1):
        fact *= k
    val = lead * fact
    if val.denominator != 1 or val <= 0:
        raise ValueError(f"degree computation produced {val}")
    out = int(val)
    if dim == 0:
        # cross-check: eventual constant = max independent monomial set size
        top = hilbert_function(I, I.D)
        if top != out:
            raise ValueError("degree cross-check failed: H(D) != leading constant")
    return out


# -- initial ideals ------------------------------------------------------------------------


def _proj_weight(I: IdealTruncation, w) -> list:
    """Lift a user-level weight vector to the projective chart (first coord 0).

    Projective inputs accept either a full weight vector or chart
    coordinates (one shorter, first coordinate fixed at 0)."""
    w = [Fraction(x) for x in w]
    if I.user_ambient.kind == PROJECTIVE:
        if len(w) == I.nvars_proj:
            return w
        if len(w) == I.nvars_proj - 1:
            return [Fraction(0)] + w
        raise ValueError("projective weight length mismatch")
    if len(w) != I.user_ambient.nvars:
        raise ValueError("weight length mismatch")
    return [Fraction(0)] + w


def initial_ideal(I: IdealTruncation, w) -> IdealTruncation:
    """in_w(I), degree by degree.  Realizable parts become realizations over
    the residue field (trivially valued); explicit parts take initial circuits."""
    wt = _proj_weight(I, w)
    parts = {}
    res_field = None
    for d in range(I.D + 1):
        part = I.part(d)
        weights = [sum(a * b for a, b in zip(wt, u)) for u in part.ground]
        if part.is_realizable:
            if part.matrix:
                residues, res_field = linalg.initial_rowspace(part.matrix, weights, part.field)
            else:
                residues, res_field = [], part.field.residue_field()
            parts[d] = DegreePart(part.ground, part.ambient, matrix=residues, field=res_field)
        else:
            m = part.matroid()
            init = m.initial_matroid(weights)
            parts[d] = DegreePart(part.ground, part.ambient, gens=init.circuits())
    prov = "derived" if res_field is not None else "explicit"
    return IdealTruncation(I.user_ambient, I.proj, I.D, parts, prov, None,
                           res_field, I.caveats)


def trivialize_ideal(I: IdealTruncation) -> IdealTruncation:
    """Coefficientwise trivialization: the underlying matroids, Boolean."""
    parts = {}
    triv = ValuedField("trivial")
    for d in range(I.D + 1):
        part = I.part(d)
        if part.is_realizable:
            parts[d] = DegreePart(part.ground, part.ambient, matrix=part.matrix, field=triv)
        else:
            parts[d] = DegreePart(
                part.ground, part.ambient, gens=[g.trivialize() for g in part.gens or []]
            )
    fld = triv if any(I.part(d).is_realizable for d in range(I.D + 1)) else None
    return IdealTruncation(I.user_ambient, I.proj, I.D, parts, I.provenance, None, fld, I.caveats)


# -- monomial term orders: standard monomials, initial monomial ideals, cones -----------------


@dataclass
class MonomialIdealData:
    """in_< (I) up to degree D: standard monomials and minimal generators."""

    D: int
    standard: dict  # degree -> list of standard monomials (a matroid basis)
    nonstandard: dict  # degree -> list of monomials of in_<(I)
    min_generators: list  # minimal monomial generators up to degree D

    def contains(self, u) -> bool:
        u = tuple(u)
        return any(all(a >= b for a, b in zip(u, g)) for g in self.min_generators)


def initial_ideal_termorder(I: IdealTruncation, order: TermOrder) -> MonomialIdealData:
    """Standard monomials per degree via the greedy basis in decreasing order."""
    if order.n != I.nvars_proj:
        raise ValueError("term order arity must match the projective variable count")
    standard = {}
    nonstandard = {}
    for d in range(I.D + 1):
        part = I.part(d)
        matroid = part.matroid()
        monos = order.sort(part.ground)
        monos.reverse()  # largest first
        basis = []
        for u in monos:
            if len(basis) == matroid.rank:
                break
            if matroid.is_independent(set(basis) | {u}):
                basis.append(u)
        if len(basis) != matroid.rank:
            raise RuntimeError("greedy standard-monomial basis failed")
        bset = set(basis)
        standard[d] = sorted(bset, key=lambda u: tuple(-e for e in u))
        nonstandard[d] = [u for u in part.ground if u not in bset]
    gens = []
    for d in range(I.D + 1):
        for u in nonstandard[d]:
            if not any(all(a >= b for a, b in zip(u, g)) for g in gens):
                gens.append(u)
    return MonomialIdealData(I.D, standard, nonstandard, sorted(gens, key=lambda u: (sum(u), tuple(-e for e in u))))


def _fundamental_circuit_of_part(part: DegreePart, basis_monos, e) -> TropPoly:
    """The vector supported on basis ∪ {e}, normalized to coefficient 0 at e."""
    target = list(basis_monos) + [e]
    if part.is_realizable:
        sub = part.vectors_supported_on(target)
        if sub.matrix is None or len(sub.matrix) != 1:
            raise RuntimeError("fundamental circuit space is not one-dimensional")
        row = sub.matrix[0]
        terms = {}
        for u, c in zip(sub.ground, row):
            if not part.field.is_zero(c):
                terms[u] = part.field.val(c)
        vec = TropPoly(part.ambient, terms)
    else:
        m = part.matroid()
        idx = [m.index[u] for u in basis_monos]
        vec = m.fundamental_circuit(frozenset(idx), m.index[tuple(e)])
    at_e = vec.coeff(e)
    if at_e.is_inf:
        raise RuntimeError("fundamental circuit misses its defining element")
    return vec.scalar_mul(-at_e.value)


def term_order_cone(I: IdealTruncation, order: TermOrder) -> Polyhedron:
    """Closure of { w : w·u_i < c_iv + w·v } over the minimal generators'
    fundamental circuits; in_w(I) = in_<(I) on the interior."""
    data = initial_ideal_termorder(I, order)
    n = I.nvars_proj
    ineqs = []
    for u in data.min_generators:
        d = sum(u)
        part = I.part(d)
        g = _fundamental_circuit_of_part(part, data.standard[d], u)
        for v, c in g.terms.items():
            if v == u:
                continue
            row = [Fraction(a - b) for a, b in zip(u, v)]
            ineqs.append((row, Fraction(c)))
    cone = Polyhedron(n, ineqs)
    if cone.is_empty:
        raise RuntimeError("term order cone is empty")
    rec = cone.recession()
    if rec.dim() != n:
        raise RuntimeError("term order cone recession is not full-dimensional")
    return cone


# -- colon and saturation ---------------------------------------------------------------------


def colon(I: IdealTruncation, m) -> IdealTruncation:
    """(I : x^m), one step; the truncation shrinks by deg(m)."""
    m = tuple(m)
    dm = sum(m)
    if len(m) != I.nvars_proj:
        raise ValueError("monomial arity must match the projective variables")
    if I.D < dm:
        raise TruncationError("truncation exhausted: deg(m) exceeds D")
    parts = {}
    for d in range(I.D - dm + 1):
        src = I.part(d + dm)
        divisible = [u for u in src.ground if all(a >= b for a, b in zip(u, m))]
        sub = src.vectors_supported_on(divisible)
        ground = monomials_of_degree(I.nvars_proj, d)
        shift = {tuple(a - b for a, b in zip(u, m)): u for u in divisible}
        if sub.is_realizable:
            index = {u: i for i, u in enumerate(sub.ground)}
            rows = []
            for row in sub.matrix or []:
                rows.append([row[index[shift[u]]] if u in shift else src.field.zero for u in ground])
            parts[d] = DegreePart(ground, I.proj, matrix=rows, field=src.field)
        else:
            gens = []
            for g in sub.gens or []:
                gens.append(TropPoly(I.proj, {
                    tuple(a - b for a, b in zip(u, m)): c for u, c in g.terms.items()
                }))
            parts[d] = DegreePart(ground, I.proj, gens=gens)
    prov = "derived" if I.provenance in ("realizable", "derived") else "explicit"
    return IdealTruncation(I.user_ambient, I.proj, I.D - dm, parts, prov, None, I.field, I.caveats)


def _parts_agree(a: IdealTruncation, b: IdealTruncation, up_to: int) -> bool:
    for d in range(up_to + 1):
        pa, pb = a.part(d), b.part(d)
        if pa.rank() != pb.rank():
            return False
        if pa.circuits() != pb.circuits():
            return False
    return True


def saturate(I: IdealTruncation, m) -> IdealTruncation:
    """(I : x^m^infinity): iterate colon until the chain stabilizes inside
    the truncation; raises TruncationError if the budget runs out first."""
    m = tuple(m)
    dm = sum(m)
    if dm == 0:
        return I
    cur = I
    while True:
        if cur.D < dm:
            raise TruncationError("saturation chain exhausted the truncation before stabilizing")
        nxt = colon(cur, m)
        if _parts_agree(cur, nxt, nxt.D):
            # a stationary step stays stationary on every window the
            # truncation can see, so cur keeps its full degree range
            return cur
        cur = nxt


def product_of_variables(I: IdealTruncation, include_homogenizer: bool = True) -> tuple:
    n = I.nvars_proj
    if include_homogenizer:
        return tuple([1] * n)
    return tuple([0] + [1] * (n - 1))


# -- zero-dimensional degrees and multiplicities ------------------------------------------------


def degree_zero_dim(I: IdealTruncation) -> int:
    """Eventual constant of the Hilbert function (2-consecutive window)."""
    vals = hilbert_values(I)
    if len(vals) >= 2 and vals[-1] == vals[-2]:
        return vals[-1]
    raise StabilizationError("zero-dimensional degree did not stabilize; raise D")


def multiplicity_zero_dim(I: IdealTruncation, w) -> int:
    """Multiplicity of V(I) at w: degree of the torus-saturated initial ideal.

    A rank-0 graded piece anywhere in the chain means the saturation is the
    unit ideal, i.e. w is not on the variety: multiplicity 0.
    """
    m = product_of_variables(I)
    dm = sum(m)
    cur = initial_ideal(I, w)
    while True:
        if any(cur.part(d).rank() == 0 for d in range(cur.D + 1)):
            return 0
        if cur.D < dm:
            raise TruncationError(
                "saturation chain exhausted the truncation before stabilizing; raise D"
            )
        nxt = colon(cur, m)
        if _parts_agree(cur, nxt, nxt.D):
            return degree_zero_dim(cur)
        cur = nxt


def two_variable_witness(I: IdealTruncation, i: int, j: int, deg_bound: int | None = None) -> TropPoly:
    """A nontrivial element of I supported on powers of x_i and x_j, times its
    convexification (so it splits into linear factors).  Projective indices."""
    n = I.nvars_proj
    if not (0 <= i < j < n):
        raise ValueError("need projective indices i < j")
    degI = deg_bound if deg_bound is not None else degree_zero_dim(I)
    found = None
    for d in range(degI, I.D + 1):
        part = I.part(d)
        E = [u for u in part.ground if all(e == 0 for k, e in enumerate(u) if k not in (i, j))]
        sub = part.vectors_supported_on(E)
        if sub.is_realizable:
            if sub.matrix:
                row = sub.matrix[0]
                terms = {u: part.field.val(c) for u, c in zip(sub.ground, row) if not part.field.is_zero(c)}
                found = TropPoly(I.proj, terms)
        else:
            gens = sub.gens or []
            if gens:
                found = gens[0]
        if found is not None:
            break
    if found is None:
        raise TruncationError("no two-variable element found within D; raise D")
    # convexify in the (i, j)-line: exponents u are determined by u[j]
    amb1 = affine(1, ("s",))
    uni = TropPoly(amb1, {(u[j],): c for u, c in found.terms.items()})
    conv = convexify(uni)
    d = found.degree()
    conv_proj = TropPoly(I.proj, {
        tuple((d - k[0]) if t == i else (k[0] if t == j else 0) for t in range(n)): c
        for k, c in conv.terms.items()
    })
    return conv_proj * found


# -- specialization ------------------------------------------------------------------------------


class GenericityError(RuntimeError):
    pass


def _specialize_realizable(I: IdealTruncation, i: int, a, rng, retries: int) -> IdealTruncation:
    real = I.realization
    field = real.field
    kind = real.ambient.kind
    n = real.ambient.nvars
    names = real.ambient.names[:i] + real.ambient.names[i + 1 :]
    new_ambient = Ambient(kind, n - 1, names)

    def substituted(alpha):
        gens = []
        for g in real.nonzero_generators():
            out = {}
            for u, c in g.items():
                k = u[i]
                v = u[:i] + u[i + 1 :]
                term = c if k == 0 else c * alpha ** k
                out[v] = out.get(v, field.zero) + term
            gens.append(out)
        return Realization(field, gens, new_ambient)

    if a is INF or (isinstance(a, TropScalar) and a.is_inf):
        if kind == LAURENT:
            raise ValueError("cannot specialize a Laurent variable at infinity")
        return tropicalize(substituted(field.zero), I.D)

    a = Fraction(a.value if isinstance(a, TropScalar) else a)
    if not field.value_group_contains(a):
        raise ValueError(f"{a} is not in the value group of {field.describe()}")
    if not field.residue_field_is_infinite():
        raise GenericityError("finite residue field: no generic lift exists")
    last = None
    for _ in range(retries):
        outs = []
        for _ in range(2):
            alpha = field.element_with_valuation(a, field.random_unit(rng))
            outs.append(tropicalize(substituted(alpha), I.D))
        if _parts_agree(outs[0], outs[1], I.D):
            return outs[0]
        last = outs
    raise GenericityError("genericity certificate failed after retries")


def _mul_compat_push(parts: dict, proj: Ambient, D: int) -> None:
    """Close generating sets under multiplication by the variables."""
    n = proj.nvars
    unit_vectors = [tuple(1 if k == t else 0 for k in range(n)) for t in range(n)]
    for d in range(D):
        src = parts.get(d, [])
        dst = parts.setdefault(d + 1, [])
        have = {(frozenset(g.terms), tuple(sorted(g.terms.items()))) for g in dst}
        for g in src:
            for e in unit_vectors:
                h = normalize_vector(g.shift(e))
                key = (frozenset(h.terms), tuple(sorted(h.terms.items())))
                if key not in have:
                    have.add(key)
                    dst.append(h)


def _reduce_generators(gens: list) -> list:
    """Span-preserving reduction: the support-minimal vectors plus any
    generator not already a tropical combination of them."""
    gens = sorted(
        {tuple(sorted(g.terms.items())): g for g in gens if not g.is_inf}.values(),
        key=vector_sort_key,
    )
    if not gens:
        return []
    keys = [frozenset(g.terms) for g in gens]
    minimal = [g for g, k in zip(gens, keys) if not any(k2 < k for k2 in keys)]
    out = list({tuple(sorted(g.terms.items())): g for g in minimal}.values())
    for g in gens:
        if not is_vector(out, g):
            out.append(g)
    return out


def _close_under_elimination(gens: list, max_rounds: int = 12) -> list:
    """Add the eliminations forced by the monomial elimination axiom.

    A candidate is added only when (⋆) pins every coefficient: the pair must
    have no shared equal-coefficient monomial besides the eliminated one.
    Where coefficients are left free by (⋆) their true value depends on the
    full ideal, so nothing is added (the possibly-incomplete caveat stays).
    """
    gens = _reduce_generators([normalize_vector(g) for g in gens if not g.is_inf])
    for _ in range(max_rounds):
        added = False
        keys = [frozenset(g.terms) for g in gens]
        pool = [g for g, k in zip(gens, keys) if not any(k2 < k for k2 in keys)]
        for x in range(len(pool)):
            for y in range(x + 1, len(pool)):
                f, g = pool[x], pool[y]
                shared_equal = [
                    u for u in set(f.terms) & set(g.terms) if f.terms[u] == g.terms[u]
                ]
                if len(shared_equal) != 1:
                    continue  # either nothing to eliminate or free coefficients
                u = shared_equal[0]
                try:
                    eliminate(gens, f, g, u)
                except EliminationError:
                    h = normalize_vector(elimination_candidate(f, g, u))
                    if not h.is_inf and h not in gens:
                        gens.append(h)
                        added = True
        if not added:
            return gens
        gens = _reduce_generators(gens)
    raise RuntimeError("elimination closure did not stabilize")


def _specialize_explicit(I: IdealTruncation, i: int, a, dmax: int | None = None) -> IdealTruncation:
    """Tropical substitution x_i -> a ⊙ x0 on all circuits, elimination
    closure per degree, then the homogenizer saturation realized as
    ((.)|_{x0=0})^h: dehomogenize the closed family and re-homogenize into
    every degree (Proposition 3.7's right-hand side, no truncation loss)."""
    a = TropScalar(Fraction(a.value if isinstance(a, TropScalar) else a))
    proj_i = i + 1 if I.user_ambient.kind != PROJECTIVE else i
    n = I.nvars_proj
    names = I.proj.names[:proj_i] + I.proj.names[proj_i + 1 :]
    new_proj = projective(n - 1, names)
    user_names = tuple(nm for k, nm in enumerate(I.user_ambient.names) if k != i)
    new_user = Ambient(I.user_ambient.kind, I.user_ambient.nvars - 1, user_names) \
        if I.user_ambient.kind != PROJECTIVE else new_proj
    D = I.D if dmax is None else min(dmax, I.D)
    by_degree = {}
    for d in range(D + 1):
        vecs = []
        for c in I.circuits(d):
            vecs.append(normalize_vector(c.substitute_scaled_var(proj_i, 0, a)))
        by_degree[d] = _reduce_generators([TropPoly(new_proj, v.terms) for v in vecs if not v.is_inf])
    _mul_compat_push(by_degree, new_proj, D)
    for d in range(D + 1):
        by_degree[d] = _close_under_elimination(by_degree[d])
    # x0-saturation: pool the dehomogenizations, re-homogenize per degree
    pool = {}
    for d in range(D + 1):
        for g in by_degree[d]:
            f = normalize_vector(g.dehomogenize())
            pool[tuple(sorted(f.terms.items()))] = f
    final = {}
    for d in range(D + 1):
        gens = []
        for f in pool.values():
            if not f.is_inf and f.degree() <= d:
                gens.append(homogenize_user_poly(f, new_proj, d))
        final[d] = _close_under_elimination(gens)
    return explicit_truncation(
        new_user, final, D, proj_ambient=new_proj,
        caveats=I.caveats + ("elimination-closure, possibly incomplete",),
    )


def _specialize_gauss(I: IdealTruncation, i: int, a: Fraction) -> IdealTruncation:
    """Exact specialization over a finite-residue field: extend scalars to
    Q(s) with the Gauss valuation, substitute the provably generic lift
    alpha = s * p^a (the residue of s is transcendental, so Remark 3.3's
    genericity hypothesis holds unconditionally), then convert the degree
    parts to explicit circuits."""
    real = I.realization
    K = real.field.gauss_extension()
    alpha = K.element_with_valuation(a, K.generic_unit())
    n = real.ambient.nvars
    names = real.ambient.names[:i] + real.ambient.names[i + 1 :]
    new_ambient = Ambient(real.ambient.kind, n - 1, names)
    gens = []
    for g in real.nonzero_generators():
        out = {}
        for u, c in g.items():
            k = u[i]
            v = u[:i] + u[i + 1 :]
            term = K.lift(c) * alpha ** k if k else K.lift(c)
            out[v] = out.get(v, K.zero) + term
        gens.append(out)
    lifted = tropicalize(Realization(K, gens, new_ambient), I.D)
    by_degree = {d: lifted.circuits(d) for d in range(lifted.D + 1)}
    return explicit_truncation(
        lifted.user_ambient, by_degree, lifted.D, proj_ambient=lifted.proj,
        caveats=I.caveats,
    )


def specialize_ideal(I: IdealTruncation, i: int, a, rng=None, retries: int = 3,
                     dmax: int | None = None) -> IdealTruncation:
    """Truncation of I|_{x_i = a} (user variable index i).

    Realizable route (exact generic lift) over fields with infinite residue
    field; explicit circuit route with the possibly-incomplete caveat
    otherwise.  a = INF substitutes the classical 0 (affine only).
    """
    import random

    rng = rng or random.Random(0)
    is_inf = a is INF or a is None or (isinstance(a, TropScalar) and a.is_inf)
    if I.provenance == "realizable" and I.realization is not None:
        if is_inf:
            return _specialize_realizable(I, i, INF, rng, retries)
        fld = I.realization.field
        a_frac = Fraction(a.value if isinstance(a, TropScalar) else a)
        if fld.residue_field_is_infinite() and fld.value_group_contains(a_frac):
            # tropicalize() re-saturates Laurent contractions, so the result
            # is exact for every ambient kind
            return _specialize_realizable(I, i, a_frac, rng, retries)
        if not fld.value_group_contains(a_frac):
            raise ValueError(f"{a_frac} is not in the value group of {fld.describe()}")
        return _specialize_gauss(I, i, a_frac)
    if is_inf:
        # drop the x_i-divisible terms of every circuit; exact (Theorem 3.2 case one)
        proj_i = i + 1 if I.user_ambient.kind != PROJECTIVE else i
        n = I.nvars_proj
        names = I.proj.names[:proj_i] + I.proj.names[proj_i + 1 :]
        new_proj = projective(n - 1, names)
        user_names = tuple(nm for k, nm in enumerate(I.user_ambient.names) if k != i)
        new_user = Ambient(I.user_ambient.kind, I.user_ambient.nvars - 1, user_names) \
            if I.user_ambient.kind != PROJECTIVE else new_proj
        by_degree = {}
        for d in range(I.D + 1):
            vecs = []
            for c in I.circuits(d):
                # surviving terms have u[proj_i] = 0, so the result stays degree-d
                kept = {
                    u[:proj_i] + u[proj_i + 1 :]: cc
                    for u, cc in c.terms.items()
                    if u[proj_i] == 0
                }
                vecs.append(TropPoly(new_proj, kept))
            by_degree[d] = [normalize_vector(v) for v in vecs if not v.is_inf]
        _mul_compat_push(by_degree, new_proj, I.D)
        return explicit_truncation(new_user, by_degree, I.D, proj_ambient=new_proj,
                                   caveats=I.caveats)
    return _specialize_explicit(I, i, a, dmax)


# -- elimination of variables and coordinate-subset dimension --------------------------------


def eliminate_vars(I: IdealTruncation, keep) -> IdealTruncation:
    """Truncation of I ∩ (semiring on the kept user variables).

    Realizable route: intersect each degree part with the coordinate
    subspace of monomials in the kept variables (plus the homogenizer).
    Explicit route: only circuits already supported there are retained.
    """
    keep = sorted(set(keep))
    n_user = I.user_ambient.nvars
    if I.user_ambient.kind == PROJECTIVE:
        raise ValueError("eliminate_vars expects an affine or Laurent presented ideal")
    if any(not 0 <= k < n_user for k in keep):
        raise ValueError("variable index out of range")
    proj_keep = [0] + [k + 1 for k in keep]
    names = tuple(I.proj.names[k] for k in proj_keep)
    new_proj = projective(len(proj_keep), names)
    user_names = tuple(I.user_ambient.names[k] for k in keep)
    new_user = Ambient(I.user_ambient.kind, len(keep), user_names)
    parts = {}
    realizable = True
    for d in range(I.D + 1):
        part = I.part(d)
        allowed = [u for u in part.ground if all(u[t] == 0 for t in range(I.nvars_proj) if t not in proj_keep)]
        sub = part.vectors_supported_on(allowed)
        ground = monomials_of_degree(len(proj_keep), d)
        reindex = {u: tuple(u[t] for t in proj_keep) for u in allowed}
        if sub.is_realizable:
            index = {u: i for i, u in enumerate(sub.ground)}
            rows = []
            for row in sub.matrix or []:
                out = {reindex[u]: row[index[u]] for u in sub.ground}
                rows.append([out.get(u, part.field.zero) for u in ground])
            parts[d] = DegreePart(ground, new_proj, matrix=rows, field=part.field)
        else:
            realizable = False
            gens = []
            for g in sub.gens or []:
                gens.append(TropPoly(new_proj, {reindex[u]: c for u, c in g.terms.items()}))
            parts[d] = DegreePart(ground, new_proj, gens=gens)
    prov = "derived" if realizable else "explicit"
    return IdealTruncation(new_user, new_proj, I.D, parts, prov, None,
                           I.field if realizable else None, I.caveats)


def _has_nonzero_part(I: IdealTruncation) -> bool:
    return any(I.part(d).rank() < len(I.part(d).ground) for d in range(I.D + 1))


def dimension_via_coordinates(I: IdealTruncation) -> int:
    """max |S| with I ∩ (Laurent semiring on S) = {inf}, after contracting to
    the torus (saturation by the product of the affine variables)."""
    if I.provenance != "realizable":
        raise ValueError("dimension_via_coordinates needs realizable provenance")
    n = I.user_ambient.nvars
    torus = saturate(I, product_of_variables(I, include_homogenizer=False))
    best = -1
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            if not _elimination_is_trivial(torus, S):
                continue
            best = size
            break
        if best >= 0:
            break
    return best


def _elimination_is_trivial(I: IdealTruncation, S) -> bool:
    """No nonzero element supported on monomials in S (and the homogenizer)."""
    proj_keep = {0} | {k + 1 for k in S}
    for d in range(I.D + 1):
        part = I.part(d)
        allowed = [
            u for u in part.ground
            if all(u[t] == 0 for t in range(I.nvars_proj) if t not in proj_keep)
        ]
        sub = part.vectors_supported_on(allowed)
        if sub.is_realizable:
            if sub.matrix:
                return False
        elif sub.gens:
            return False
    return True


# -- monomial changes of coordinates (Laurent) ----------------------------------------------


@dataclass
class LaurentCircuitFamily:
    """Circuits of a Laurent-presented ideal, with the degree bound used."""

    ambient: Ambient  # a Laurent ambient
    circuits: tuple
    D: int
    caveats: tuple = ()


def laurent_circuits(I: IdealTruncation) -> LaurentCircuitFamily:
    """Dehomogenized circuits of the truncation, as Laurent polynomials."""
    if I.user_ambient.kind == PROJECTIVE:
        lau = Ambient(LAURENT, I.user_ambient.nvars - 1, I.user_ambient.names[1:])
    else:
        lau = Ambient(LAURENT, I.user_ambient.nvars, I.user_ambient.names)
    out = []
    seen = set()
    for d in range(I.D + 1):
        for c in I.circuits(d):
            f = c.dehomogenize() if c.ambient.kind == PROJECTIVE else c
            g = normalize_vector(TropPoly(lau, f.terms))
            if g.is_inf:
                continue
            # dedupe up to monomial shifts: Laurent scaling is invisible
            mins = [min(u[t] for u in g.terms) for t in range(lau.nvars)]
            g = g.shift([-x for x in mins])
            key = tuple(sorted(g.terms.items()))
            if key not in seen:
                seen.add(key)
                out.append(g)
    return LaurentCircuitFamily(lau, tuple(out), I.D, I.caveats)


def change_coordinates(family: LaurentCircuitFamily, A, lam=None) -> LaurentCircuitFamily:
    """Apply the monomial automorphism x_i -> lam_i ⊙ x^{A column i}.

    Circuits map by u -> A u with tropical scaling lam·u; A must be in
    GL(n, Z).  The degree bound is recomputed from the exponent image.
    """
    from .lattice import invert_unimodular

    n = family.ambient.nvars
    A = [[int(x) for x in row] for row in A]
    invert_unimodular(A)  # raises unless unimodular
    lam = [Fraction(0)] * n if lam is None else [Fraction(x) for x in lam]
    mapped = []
    maxdeg = 0
    for c in family.circuits:
        g = c.map_exponents(A, shift=lam, ambient=family.ambient)
        mapped.append(normalize_vector(g))
        spread = max(sum(u) for u in g.terms) - min(sum(u) for u in g.terms)
        maxdeg = max(maxdeg, spread)
    return LaurentCircuitFamily(family.ambient, tuple(mapped), max(family.D, maxdeg), family.caveats)
