from fractions import Fraction as F

import pytest

import tropideals.ideals as ti
import tropideals.geometry as tg
from corpus import (
    circle_trivial,
    conic_chart,
    conic_projective,
    cubic_univariate,
    line_trivial,
    point_ideal,
    quadratic_t,
    two_lines,
)
from tropideals.complexes import (
    hypersurface,
    is_balanced,
    normal_complex,
    recession_fan,
    star_weighted,
    stable_intersect_hyperplane,
    weighted_complexes_equal,
)
from tropideals.poly import laurent, parse_poly, projective
from tropideals.polyhedron import poly_from_point


def test_groebner_polynomial_conic():
    I = conic_projective(2)
    F2 = tg.groebner_polynomial(I, 2)
    # degrees 0 and 1 contribute monomial factors only; the degree-2 factor
    # is exactly the conic polynomial up to a monomial shift
    conic = parse_poly("x*y oplus x*z oplus y*z oplus 1 odot z^2", projective(3, ("x", "y", "z")))
    N1 = normal_complex(F2, chart=True)
    N2 = normal_complex(conic, chart=True)
    assert N1.same_cells(N2)


def test_groebner_complex_conic_vs_normal_complex():
    I = conic_projective(2)
    GC = tg.groebner_complex(I, 2)
    conic = parse_poly("x*y oplus x*z oplus y*z oplus 1 odot z^2", projective(3, ("x", "y", "z")))
    assert GC.same_cells(normal_complex(conic, chart=True))


def test_recession_fan_of_groebner_complex():
    I = conic_projective(2)
    GC = tg.groebner_complex(I, 2)
    GCtriv = tg.groebner_complex(ti.trivialize_ideal(I), 2)
    assert recession_fan(GC).same_cells(GCtriv)


def test_groebner_complex_principal_monomial():
    import corpus

    real = ti.Realization(corpus.Q, [{(1, 1): F(1)}], projective(2))
    I = ti.tropicalize(real, 2)
    GC = tg.groebner_complex(I, 2)
    assert len(GC.cells) == 1 and GC.cells[0].poly.dim() == 1  # all of the chart


def test_variety_point_ideal():
    I = point_ideal(2)
    V = tg.variety_complex(I, 1)
    pts = tg.zero_cells(V)
    assert pts == [(F(0), F(0))]


def test_variety_weights_match_hypersurface():
    I = conic_chart(4)
    W = tg.weighted_variety(I, 1, dmax=2)
    Vh = hypersurface(parse_poly("y oplus z oplus y*z oplus 1 odot z^2", laurent(2, ("y", "z"))))
    assert weighted_complexes_equal(W, Vh)
    ok, _ = is_balanced(W)
    assert ok


def test_cell_multiplicity_circle_weight_two():
    I = circle_trivial(4)
    W = tg.weighted_variety(I, 1, dmax=2)
    rays = dict(W.weighted_cells())
    assert len(rays) == 3
    assert all(m == 2 for m in rays.values())
    Vh = hypersurface(parse_poly("x^2 oplus y^2 oplus 0", laurent(2, ("x", "y"))))
    assert weighted_complexes_equal(W, Vh)


def test_weighted_star_equals_initial_variety():
    I = conic_chart(4)
    W = tg.weighted_variety(I, 1, dmax=2)
    for w in [(F(0), F(0)), (F(0), F(-1, 2))]:
        S = star_weighted(W, w)
        J = ti.initial_ideal(I, list(w))
        WJ = tg.weighted_variety(J, 1, dmax=2)
        assert weighted_complexes_equal(S, WJ)


def test_specialization_equals_stable_intersection():
    I = conic_chart(4)
    Vh = hypersurface(parse_poly("y oplus z oplus y*z oplus 1 odot z^2", laurent(2, ("y", "z"))))
    for a in (F(5), F(0)):
        S = ti.specialize_ideal(I, 0, a)
        pts = tg.zero_cells(tg.variety_complex(S, 2))
        mults = {tuple(p): ti.multiplicity_zero_dim(S, list(p)) for p in pts}
        stab = stable_intersect_hyperplane(Vh, 0, a)
        assert mults == {tuple(p.relint_point()): m for p, m in stab.weighted_cells()}
        assert sum(mults.values()) == 2


def test_degree_equals_sum_of_multiplicities():
    for I, expected in [(cubic_univariate(7), 3), (quadratic_t(6), 2), (two_lines(6), 1)]:
        pts = tg.zero_cells(tg.variety_complex(I, min(3, I.D)))
        mults = {p: ti.multiplicity_zero_dim(I, list(p)) for p in pts}
        total = sum(m for m in mults.values())
        assert total == ti.degree(I) == expected


def test_variety_of_zero_and_unit_ideals():
    import corpus
    Z = ti.tropicalize(ti.Realization(corpus.Q, [], laurent(2)), 2)
    V = tg.variety_complex(Z)
    assert len(V.cells) == 1 and V.cells[0].poly.dim() == 2

    U = ti.tropicalize(ti.Realization(corpus.Q, [{(0, 0): F(1)}], laurent(2)), 2)
    VU = tg.variety_complex(U, 1)
    assert VU.cells == []


def test_line_balancing_and_mutant():
    from tropideals.complexes import WeightedComplex

    I = line_trivial(3)
    W = tg.weighted_variety(I, 1, dmax=1)
    ok, _ = is_balanced(W)
    assert ok
    assert set(W.weights.values()) == {1}

    C = circle_trivial(4)
    WC = tg.weighted_variety(C, 1, dmax=2)
    bad_weights = dict(WC.weights)
    k = next(iter(bad_weights))
    bad_weights[k] = 1
    ok, witness = is_balanced(WeightedComplex(WC.complex, bad_weights, 1))
    assert not ok and witness == poly_from_point((0, 0))


def test_cell_multiplicity_off_variety_is_zero():
    I = conic_chart(4)
    stray = poly_from_point((17, 23))  # not on the variety
    assert tg.cell_multiplicity(I, stray) == 0
