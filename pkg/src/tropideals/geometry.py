"""Geometry of ideal truncations: Gröbner complexes, varieties of circuit
families, cell multiplicities via the graded initial-ideal pipeline, and
weighted varieties.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .complexes import (
    PolyComplex,
    WeightedComplex,
    hypersurface,
    normal_complex,
    prevariety,
)
from .ideals import (
    IdealTruncation,
    LaurentCircuitFamily,
    StabilizationError,
    initial_ideal,
    laurent_circuits,
)
from .lattice import saturated_basis_and_completion
from .poly import LAURENT, PROJECTIVE, Ambient, TropPoly, laurent
from .polyhedron import Polyhedron, whole_space


def groebner_polynomial(I: IdealTruncation, dmax: int | None = None) -> TropPoly:
    """F = prod_{d <= dmax} F_d with F_d = sum_B p(B) ⊙ prod_{u not in B} x^u."""
    dmax = I.D if dmax is None else dmax
    out = None
    for d in range(dmax + 1):
        part = I.part(d)
        m = part.matroid()
        terms = {}
        for B, val in m.p_map().items():
            exp = [0] * I.nvars_proj
            for idx, u in enumerate(m.ground):
                if idx in B:
                    continue
                exp = [a + b for a, b in zip(exp, u)]
            exp = tuple(exp)
            if exp in terms:
                terms[exp] = min(terms[exp], val)
            else:
                terms[exp] = val
        Fd = TropPoly(Ambient(LAURENT, I.nvars_proj, I.proj.names), terms)
        out = Fd if out is None else out * Fd
    return out


def groebner_complex(I: IdealTruncation, dmax: int | None = None) -> PolyComplex:
    """Normal complex of the Gröbner polynomial, in the chart w_0 = 0."""
    F = groebner_polynomial(I, dmax)
    return normal_complex(F, chart=True)


def chart_circuits(I: IdealTruncation, dmax: int | None = None) -> list:
    """Dehomogenized circuits in the user chart, deduplicated."""
    fam = laurent_circuits(I)
    if dmax is not None and dmax < I.D:
        fam = LaurentCircuitFamily(
            fam.ambient,
            tuple(c for d in range(dmax + 1) for c in _chart_circuits_of_degree(I, d)),
            dmax,
            fam.caveats,
        )
    return list(fam.circuits)


def _chart_circuits_of_degree(I, d):
    from .vmatroid import normalize_vector

    lau = laurent(I.nvars_proj - 1, I.proj.names[1:])
    out = []
    for c in I.circuits(d):
        f = c.dehomogenize()
        out.append(normalize_vector(TropPoly(lau, f.terms)))
    return out


def variety_complex(I: IdealTruncation, dmax: int | None = None) -> PolyComplex:
    """Prevariety of the circuits up to dmax, in the user chart.

    Labeled a prevariety: circuits up to the truncation bound need not be
    a tropical basis.
    """
    circuits = chart_circuits(I, dmax)
    n = I.nvars_proj - 1
    nontrivial = [c for c in circuits if len(c.terms) >= 1]
    if not nontrivial:
        return PolyComplex(n, [whole_space(n)])
    return prevariety(nontrivial)


def _initial_circuit_supports(I: IdealTruncation, w, dmax: int | None = None) -> list:
    """Dehomogenized circuits of in_w(I) per degree, as exponent-set lists."""
    init = initial_ideal(I, w)
    top = init.D if dmax is None else min(dmax, init.D)
    out = []
    for d in range(top + 1):
        for c in init.circuits(d):
            out.append(frozenset(u[1:] for u in c.terms))
    return out


class MultiplicityError(RuntimeError):
    pass


def variety_cell_at(I: IdealTruncation, w, dmax: int | None = None):
    """The prevariety cell whose relative interior contains w, built locally
    as the intersection of the per-circuit normal-complex cells labeled at w
    (no complex enumeration).  Returns None when w is off the prevariety."""
    from .complexes import _cell_for_label, _label_at, _term_forms

    circuits = chart_circuits(I, dmax)
    n = I.nvars_proj - 1
    w = [Fraction(x) for x in w]
    cell = whole_space(n)
    for f in circuits:
        forms = _term_forms(f, chart=False)
        label = _label_at(forms, w)
        if len(label) < 2:
            return None
        cell = cell.intersect(_cell_for_label(forms, label, n))
    return cell


def cell_multiplicity(I: IdealTruncation, sigma: Polyhedron, max_window: int = 8,
                      dmax: int | None = None) -> int:
    """Multiplicity of a maximal cell of V(I): the degree of the graded part
    in_w(I) ∩ S_0, computed as the stabilized matroid rank of windows of
    S_0-monomials (w a relative interior witness of sigma).

    Pipeline: initial circuits at w, a unimodular change of coordinates
    mapping span(sigma) ∩ Z^n onto the first coordinates, projection to the
    complementary torus, and window ranks until stabilization.
    """
    w = sigma.relint_point()
    n = I.nvars_proj - 1
    supports = _initial_circuit_supports(I, list(w), dmax)
    d = sigma.dim()
    if d == 0:
        basis = []
        proj_supports = [frozenset(u) for u in supports]
    else:
        basis = sigma.span_lattice_basis()
        _, completion = saturated_basis_and_completion(basis)
        # homogeneity: every circuit must be constant on span(sigma) gradings
        proj_supports = []
        for S in supports:
            degs = {tuple(sum(b * e for b, e in zip(brow, u)) for brow in basis) for u in S}
            if len(degs) > 1:
                raise MultiplicityError(
                    "initial circuits are not span(sigma)-graded; "
                    "is the witness in the relative interior of a cell?"
                )
            proj_supports.append(
                frozenset(
                    tuple(sum(c * e for c, e in zip(crow, u)) for crow in completion)
                    for u in S
                )
            )
    k = n - d
    if k == 0:
        return 1
    shapes = _normalized_shapes(proj_supports)
    if not shapes:
        raise MultiplicityError("no initial circuits: cell is not in the truncation's prevariety")
    prev = None
    for e in range(1, max_window + 1):
        r = _window_rank(shapes, e, k)
        if prev is not None and r == prev:
            return r
        prev = r
    raise MultiplicityError("window rank did not stabilize; raise D or the window cap")


def _normalized_shapes(supports) -> list:
    shapes = set()
    for S in supports:
        if not S:
            continue
        k = len(next(iter(S)))
        mins = [min(u[i] for u in S) for i in range(k)]
        shapes.add(frozenset(tuple(a - b for a, b in zip(u, mins)) for u in S))
    # keep the support-minimal shapes only
    return [s for s in shapes if not any(t < s for t in shapes)]


def _window_rank(shapes, e: int, k: int) -> int:
    window = list(itertools.product(range(e + 1), repeat=k))
    forbidden = []
    for S in shapes:
        extent = [max(u[i] for u in S) for i in range(k)]
        if any(x > e for x in extent):
            continue
        ranges = [range(e - x + 1) for x in extent]
        for t in itertools.product(*ranges):
            forbidden.append({tuple(a + b for a, b in zip(u, t)) for u in S})
    chosen = set()
    for u in sorted(window):
        cand = chosen | {u}
        if not any(f <= cand for f in forbidden):
            chosen.add(u)
    return len(chosen)


def weighted_variety(I: IdealTruncation, dim: int, dmax: int | None = None,
                     mult_dmax: int | None = None) -> WeightedComplex:
    """V(I) (prevariety of circuits) with cell multiplicities on the
    dim-dimensional cells.  dmax bounds the circuits used for the complex;
    mult_dmax bounds the initial circuits used for the multiplicities."""
    cx = variety_complex(I, dmax)
    weights = {}
    for c in cx.cells_of_dim(dim):
        weights[c.poly] = cell_multiplicity(I, c.poly, dmax=mult_dmax)
    return WeightedComplex(cx, weights, dim)


def hypersurface_of_circuit(I: IdealTruncation, d: int) -> WeightedComplex:
    """Weighted hypersurface of the unique degree-d circuit (principal check)."""
    circuits = _chart_circuits_of_degree(I, d)
    if len(circuits) != 1:
        raise ValueError("expected a single circuit in this degree")
    return hypersurface(circuits[0])


def zero_cells(cx: PolyComplex) -> list:
    """The points of a zero-dimensional complex, as coordinate tuples."""
    out = []
    for c in cx.cells_of_dim(0):
        out.append(c.poly.relint_point())
    return sorted(set(out))
