"""Polyhedral complexes from tropical polynomials: normal complexes,
hypersurfaces with lattice-length weights, prevarieties, stars, recession
fans, the balancing check, and stable intersection with a coordinate
hyperplane.

Cells of a normal complex N(f) are indexed by the initial supports
Q = supp(in_w(f)); the closed cell for Q is cut out by the equalities
within Q and the inequalities against the rest of the support.  Cells are
enumerated by closing the realized labels under union (intersection of
cells dualizes to union of labels).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import lattice_index, primitive, quotient_coordinates, saturated_basis_and_completion
from .poly import PROJECTIVE, TropPoly
from .polyhedron import Polyhedron
from . import lp


def _term_forms(f: TropPoly, chart: bool):
    """(exponent, linear form, constant) per term; chart drops coordinate 0."""
    out = []
    for u, c in f.terms.items():
        form = [Fraction(e) for e in (u[1:] if chart else u)]
        out.append((u, form, Fraction(c)))
    return out


def _cell_for_label(forms, label, nvars) -> Polyhedron:
    base = next(t for t in forms if t[0] in label)
    _, a0, c0 = base
    eqs = []
    ineqs = []
    for u, a, c in forms:
        if u == base[0]:
            continue
        row = [x - y for x, y in zip(a0, a)]
        if u in label:
            eqs.append((row, c - c0))
        else:
            ineqs.append((row, c - c0))
    return Polyhedron(nvars, ineqs, eqs)


def _label_at(forms, w) -> frozenset:
    best = None
    arg = []
    for u, a, c in forms:
        v = c + sum(x * y for x, y in zip(a, w))
        if best is None or v < best:
            best, arg = v, [u]
        elif v == best:
            arg.append(u)
    return frozenset(arg)


@dataclass
class Cell:
    poly: Polyhedron
    label: frozenset | tuple | None = None

    def dim(self) -> int:
        return self.poly.dim()


class PolyComplex:
    """A finite polyhedral complex: cells with optional labels."""

    def __init__(self, nvars: int, cells):
        self.nvars = nvars
        seen = {}
        for c in cells:
            if isinstance(c, Polyhedron):
                c = Cell(c)
            if c.poly.is_empty:
                continue
            if c.poly not in seen:
                seen[c.poly] = c
        self.cells = sorted(seen.values(), key=lambda c: (c.poly.dim(), c.poly.key()))

    def dims(self):
        return sorted({c.dim() for c in self.cells})

    def dim(self) -> int:
        return max((c.dim() for c in self.cells), default=-1)

    def cells_of_dim(self, d: int):
        return [c for c in self.cells if c.dim() == d]

    def maximal_cells(self):
        out = []
        for c in self.cells:
            if not any(o is not c and o.poly.contains_poly(c.poly) for o in self.cells):
                out.append(c)
        return out

    def supports_point(self, pt) -> bool:
        return any(c.poly.contains_point(pt) for c in self.cells)

    def cell_with_point_in_relint(self, pt):
        for c in self.cells:
            if c.poly.relint_contains_point(pt):
                return c
        return None

    def cells_containing(self, poly: Polyhedron):
        return [c for c in self.cells if c.poly.contains_poly(poly)]

    def polyhedra(self):
        return [c.poly for c in self.cells]

    def same_cells(self, other: "PolyComplex") -> bool:
        return set(self.polyhedra()) == set(other.polyhedra())

    def validate(self) -> None:
        """Pairwise intersections must be common faces lying in the complex."""
        polys = set(self.polyhedra())
        cells = self.cells
        for i, c1 in enumerate(cells):
            for c2 in cells[i + 1 :]:
                cap = c1.poly.intersect(c2.poly)
                if cap.is_empty:
                    continue
                if cap not in polys:
                    raise ValueError(f"intersection of two cells is not a cell: {cap}")
                if not (cap.is_face_of(c1.poly) and cap.is_face_of(c2.poly)):
                    raise ValueError("cells do not intersect in a common face")

    def __repr__(self):
        counts = {}
        for c in self.cells:
            counts[c.dim()] = counts.get(c.dim(), 0) + 1
        return f"PolyComplex(n={self.nvars}, cells by dim {counts})"


def normal_complex(f: TropPoly, chart: bool = False) -> PolyComplex:
    """N(f): closures of the loci with constant initial form.

    chart=True quotients a homogeneous polynomial's lineality by fixing the
    first coordinate to 0 (cells then live in R^(nvars-1)).
    """
    if f.is_inf:
        raise ValueError("normal complex of the infinite polynomial")
    nvars = f.ambient.nvars - (1 if chart else 0)
    forms = _term_forms(f, chart)
    cells = {}
    tried = set()
    queue = [frozenset({u}) for u in f.terms]
    while queue:
        Q = queue.pop()
        if Q in tried:
            continue
        tried.add(Q)
        poly = _cell_for_label(forms, Q, nvars)
        if poly.is_empty:
            continue
        label = _label_at(forms, poly.relint_point())
        if label in cells:
            continue
        cells[label] = Cell(poly, label)
        for other in list(cells):
            union = label | other
            if union not in tried:
                queue.append(union)
    return PolyComplex(nvars, cells.values())


def dual_edge_lattice_length(label) -> int:
    """Lattice length of the segment spanned by collinear exponent vectors."""
    pts = sorted(label)
    base = pts[0]
    diffs = [tuple(a - b for a, b in zip(u, base)) for u in pts[1:]]
    nonzero = [d for d in diffs if any(d)]
    if not nonzero:
        raise ValueError("label is a single point")
    direction = primitive(nonzero[-1])
    steps = []
    for d in nonzero:
        ratio = None
        for a, b in zip(d, direction):
            if b != 0:
                ratio = Fraction(a, b)
                break
        if ratio is None or any(a != ratio * b for a, b in zip(d, direction)):
            raise ValueError("dual cell is not an edge")
        steps.append(ratio)
    hi = max(steps + [Fraction(0)])
    lo = min(steps + [Fraction(0)])
    length = hi - lo
    if length.denominator != 1:
        raise ValueError("non-lattice edge length")
    return int(length)


@dataclass
class WeightedComplex:
    """Pure-dimensional complex with positive integer weights on maximal cells."""

    complex: PolyComplex
    weights: dict  # Polyhedron -> int
    dim: int

    def __post_init__(self):
        maxdims = {c.dim() for c in self.complex.cells if c.poly in self.weights}
        if maxdims and maxdims != {self.dim}:
            raise ValueError("weights must sit exactly on the declared-dimension cells")
        for w in self.weights.values():
            if w <= 0 or int(w) != w:
                raise ValueError("weights are positive integers")

    def weighted_cells(self):
        return [(p, self.weights[p]) for c in self.complex.cells if (p := c.poly) in self.weights]

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def is_pure(self) -> bool:
        return all(
            any(c2.poly.contains_poly(c.poly) and c2.poly in self.weights for c2 in self.complex.cells)
            for c in self.complex.cells
        )


def hypersurface(f: TropPoly, chart: bool = False) -> WeightedComplex:
    """V(f) as a weighted complex: min attained twice, dual-edge weights."""
    if f.is_inf or f.is_monomial():
        raise ValueError("hypersurface needs at least two terms")
    N = normal_complex(f, chart)
    cells = [c for c in N.cells if len(c.label) >= 2]
    cx = PolyComplex(N.nvars, cells)
    d = cx.dim()
    weights = {}
    for c in cx.cells:
        if c.dim() == d:
            weights[c.poly] = dual_edge_lattice_length(c.label)
    return WeightedComplex(cx, weights, d)


def prevariety(fs, chart: bool = False) -> PolyComplex:
    """Common refinement of the V(f_i), built by iterated intersection of
    the hypersurface complexes.  Labels are per-factor initial supports."""
    fs = list(fs)
    if not fs:
        raise ValueError("prevariety of an empty list")
    nvars = fs[0].ambient.nvars - (1 if chart else 0)
    current = None
    for f in fs:
        if f.is_monomial():
            return PolyComplex(nvars, [])  # a monomial has empty variety
        N = normal_complex(f, chart)
        cells = [c.poly for c in N.cells if len(c.label) >= 2]
        if current is None:
            current = cells
            continue
        nxt = {}
        for p in current:
            for q in cells:
                cap = p.intersect(q)
                if not cap.is_empty:
                    nxt[cap] = cap
        current = list(nxt)
        if not current:
            break
    forms = [_term_forms(g, chart) for g in fs]
    out = []
    for p in current or []:
        w = p.relint_point()
        labels = tuple(_label_at(fm, w) for fm in forms)
        if all(len(lb) >= 2 for lb in labels):
            out.append(Cell(p, labels))
    return PolyComplex(nvars, out)


def star(complex_: PolyComplex, w) -> PolyComplex:
    """Fan of tangent cones at w, indexed by the cells containing w."""
    base = complex_.cell_with_point_in_relint(w)
    if base is None:
        return PolyComplex(complex_.nvars, [])
    cones = []
    for c in complex_.cells:
        if c.poly.contains_poly(base.poly):
            cones.append(Cell(c.poly.tangent_cone(w), c.label))
    return PolyComplex(complex_.nvars, cones)


def star_weighted(W: WeightedComplex, w) -> WeightedComplex:
    """Star of a weighted complex: cones inherit the source cell weights."""
    base = W.complex.cell_with_point_in_relint(w)
    if base is None:
        return WeightedComplex(PolyComplex(W.complex.nvars, []), {}, W.dim)
    cones = []
    weights = {}
    for c in W.complex.cells:
        if c.poly.contains_poly(base.poly):
            cone = c.poly.tangent_cone(w)
            cones.append(Cell(cone, c.label))
            if c.poly in W.weights:
                weights[cone] = W.weights[c.poly]
    return WeightedComplex(PolyComplex(W.complex.nvars, cones), weights, W.dim)


class NotAFanError(ValueError):
    pass


def recession_fan(complex_: PolyComplex) -> PolyComplex:
    """Fan of recession cones of all cells; raises NotAFanError when the
    cones do not intersect in common faces."""
    cones = {}
    for c in complex_.cells:
        r = c.poly.recession()
        cones.setdefault(r, Cell(r, c.label))
    fan = PolyComplex(complex_.nvars, cones.values())
    polys = set(fan.polyhedra())
    cells = fan.cells
    for i, c1 in enumerate(cells):
        for c2 in cells[i + 1 :]:
            cap = c1.poly.intersect(c2.poly)
            if cap.is_empty:
                continue
            if cap not in polys or not (cap.is_face_of(c1.poly) and cap.is_face_of(c2.poly)):
                raise NotAFanError("recession cones do not form a fan")
    return fan


def recession_fan_weighted(W: WeightedComplex) -> WeightedComplex:
    fan = recession_fan(W.complex)
    weights = {}
    for c in W.complex.cells:
        if c.poly in W.weights:
            r = c.poly.recession()
            if r.dim() == W.dim:
                weights[r] = weights.get(r, 0) + W.weights[c.poly]
    return WeightedComplex(fan, weights, W.dim)


# -- balancing ------------------------------------------------------------------


def _codim1_cells(W: WeightedComplex):
    """(d-1)-faces of the weighted maximal cells, deduplicated."""
    out = {}
    for p, _ in W.weighted_cells():
        for f in p.proper_faces():
            if f.dim() == W.dim - 1:
                out[f] = f
    return list(out.values())


def quotient_primitive_ray(tau: Polyhedron, sigma: Polyhedron):
    """Primitive generator of (tangent cone of tau at sigma) / span(sigma).

    Returns the image in Z^n / (span(sigma) ∩ Z^n), expressed in the
    completion coordinates of a saturated basis.
    """
    w = sigma.relint_point()
    cone = tau.tangent_cone(w)
    v = [Fraction(a) - Fraction(b) for a, b in zip(tau.relint_point(), w)]
    if sigma.dim() == 0:
        return primitive(v)
    basis = sigma.span_lattice_basis()
    comp = saturated_basis_and_completion(basis)
    coords = quotient_coordinates(comp, v)
    return primitive(coords)


def is_balanced(W: WeightedComplex):
    """(ok, failing (d-1)-cell or None): weighted primitive rays sum to zero
    in the quotient lattice at every codimension-one cell."""
    if not W.weights:
        raise ValueError("balancing requires a weighted complex")
    for sigma in _codim1_cells(W):
        total = None
        for p, m in W.weighted_cells():
            if not p.contains_poly(sigma):
                continue
            ray = quotient_primitive_ray(p, sigma)
            term = [m * x for x in ray]
            total = term if total is None else [a + b for a, b in zip(total, term)]
        if total is None or any(x != 0 for x in total):
            return False, sigma
    return True, None


# -- stable intersection with a coordinate hyperplane -------------------------------


def stable_intersect_hyperplane(W: WeightedComplex, i: int, a) -> WeightedComplex:
    """W ∩_st {x_i = a}, projected to R^(n-1) by dropping coordinate i.

    Multiplicity of a maximal cell sigma' of the intersection:
    sum over maximal cells tau displaced into {x_i > a} of
    (v_tau)_i * mult(tau), v_tau the positive generator of N_tau/N_sigma'.
    """
    if not W.is_pure():
        raise ValueError("stable intersection requires a pure complex")
    ok, bad = is_balanced(W)
    if not ok:
        raise ValueError(f"stable intersection requires a balanced complex; fails at {bad}")
    n = W.complex.nvars
    a = Fraction(a)
    hyper = [Fraction(0)] * n
    hyper[i] = Fraction(1)
    H = Polyhedron(n, eqs=[(hyper, a)])
    pieces = {}
    for p, m in W.weighted_cells():
        span = p.span_lattice_basis()
        if all(v[i] == 0 for v in span):
            continue  # span(tau) inside the hyperplane direction: dropped
        cap = p.intersect(H)
        if cap.is_empty:
            continue
        pieces[cap] = None
    # multiplicities via the displacement rule
    cells = []
    weights = {}
    for cap in pieces:
        if cap.dim() != W.dim - 1:
            continue  # lower-dimensional touch: face of another piece
        w = cap.relint_point()
        mult = 0
        for p, m in W.weighted_cells():
            if not p.contains_point(w):
                continue
            # tau is displaced into {x_i > a} iff its tangent cone at w
            # contains a direction with positive i-th coordinate
            cone = p.tangent_cone(w)
            displaced = lp.feasible(
                n, list(cone.ineqs), list(cone.eqs) + [(hyper, 1)]
            )
            if not displaced:
                continue
            lat = p.span_lattice_basis()
            g = _positive_gcd([v[i] for v in lat])
            mult += g * m
        proj = cap.substitute_coordinate(i, a)
        cells.append(Cell(proj))
        weights[proj] = mult
        # faces for a valid complex
        for f in proj.proper_faces():
            cells.append(Cell(f))
    return WeightedComplex(PolyComplex(n - 1, cells), weights, W.dim - 1)


def _positive_gcd(xs) -> int:
    import math

    g = 0
    for x in xs:
        if Fraction(x).denominator != 1:
            raise ValueError("lattice basis must be integral")
        g = math.gcd(g, abs(int(x)))
    if g == 0:
        raise ValueError("cell span lies inside the hyperplane")
    return g


# -- equality of weighted complexes up to common refinement --------------------------


def _split_by_hyperplanes(poly: Polyhedron, hyperplanes, d: int):
    """Full-dimensional (dim d) pieces of poly refined by the hyperplanes."""
    if not hyperplanes:
        return [poly] if poly.dim() == d else []
    (a, b), rest = hyperplanes[0], hyperplanes[1:]
    out = []
    for side in ((a, b), ([-x for x in a], -b)):
        piece = poly.intersect(Polyhedron(poly.nvars, ineqs=[side]))
        if not piece.is_empty and piece.dim() == d:
            out.extend(_split_by_hyperplanes(piece, rest, d))
    return out


def weighted_complexes_equal(W1: WeightedComplex, W2: WeightedComplex) -> bool:
    """Same support and same weights, up to common refinement."""
    if W1.dim != W2.dim:
        return False
    d = W1.dim
    cells1 = W1.weighted_cells()
    cells2 = W2.weighted_cells()
    hyperplanes = sorted(
        {(a, b) for p, _ in cells1 + cells2 for a, b in (*p.eqs, *p.ineqs)}
    )
    for p, m in cells1:
        for piece in _split_by_hyperplanes(p, hyperplanes, d):
            w = piece.relint_point()
            match = [m2 for q, m2 in cells2 if q.contains_point(w)]
            if not match or max(match) != m or min(match) != m:
                return False
    for q, m in cells2:
        for piece in _split_by_hyperplanes(q, hyperplanes, d):
            w = piece.relint_point()
            match = [m1 for p, m1 in cells1 if p.contains_point(w)]
            if not match or max(match) != m or min(match) != m:
                return False
    return True
