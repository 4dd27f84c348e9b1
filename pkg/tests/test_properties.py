"""Randomized and cross-route property tests for the spec invariants not
already covered by the acceptance criteria."""

import random
from fractions import Fraction as F

import tropideals.geometry as tg
import tropideals.ideals as ti
from corpus import Q2, conic_chart, conic_projective, line_trivial, point_ideal
from tropideals.complexes import (
    hypersurface,
    is_balanced,
    prevariety,
    recession_fan_weighted,
    star_weighted,
    stable_intersect_hyperplane,
    weighted_complexes_equal,
)
from tropideals.fields import ValuedField
from tropideals.linalg import supported_subspace
from tropideals.poly import TropPoly, affine, laurent, monomial, parse_poly, projective
from tropideals.semiring import INF, TropScalar
from tropideals.vmatroid import VMatroid, eliminate, is_vector


def rand_poly(rng, amb, nterms=(1, 6), deg=3, laurent_ok=False):
    lo = -deg if laurent_ok else 0
    terms = {}
    for _ in range(rng.randint(*nterms)):
        u = tuple(rng.randint(lo, deg) for _ in range(amb.nvars))
        terms[u] = F(rng.randint(-9, 9), rng.randint(1, 4))
    return TropPoly(amb, terms)


def test_eval_is_a_semiring_homomorphism():
    rng = random.Random(1)
    amb = affine(3)
    for _ in range(60):
        f = rand_poly(rng, amb)
        g = rand_poly(rng, amb)
        w = [F(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(3)]
        assert (f + g).evaluate(w) == f.evaluate(w) + g.evaluate(w)
        fv, gv = f.evaluate(w), g.evaluate(w)
        assert (f * g).evaluate(w) == fv * gv


def test_initial_form_monomial_shift():
    rng = random.Random(2)
    amb = laurent(2)
    for _ in range(40):
        f = rand_poly(rng, amb, laurent_ok=True)
        if f.is_inf:
            continue
        u = (rng.randint(-2, 2), rng.randint(-2, 2))
        w = [F(rng.randint(-9, 9)) for _ in range(2)]
        shifted = f.shift(u)
        assert shifted.initial_form(w) == f.initial_form(w).shift(u)


def test_homogeneous_initial_dehomogenization():
    # Lemma 2.4(2) at the polynomial level: for homogeneous f,
    # in_{(0,w')}(f)|_{x0=0} = in_{w'}(f|_{x0=0})
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 3)
        amb = affine(n)
        g = rand_poly(rng, amb)
        if g.is_inf:
            continue
        f = g.homogenize()
        w = [F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n)]
        lhs = f.initial_form([F(0)] + w).dehomogenize()
        rhs = f.dehomogenize().initial_form(w)
        assert lhs == rhs


def test_fundamental_circuits_match_classical_oracle():
    """Realizable circuits are tropicalizations of the row-space elements
    with the same support, computed by independent linear algebra."""
    field = Q2
    amb = projective(4)
    ground = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    rows = [
        [F(1), F(2), F(4), F(8)],
        [F(1), F(1), F(2), F(6)],
    ]
    M = VMatroid.from_rowspace(rows, ground, amb, field)
    ok, _ = M.check_exchange_axiom()
    assert ok
    for c in M.circuits():
        cols = [i for i, u in enumerate(ground) if u in c.terms]
        vecs = supported_subspace(rows, cols, field)
        assert len(vecs) == 1
        v = vecs[0]
        trop = {ground[i]: field.val(x) for i, x in enumerate(v) if not field.is_zero(x)}
        base = min(trop.values())
        assert {u: t - base for u, t in trop.items()} == c.terms


def test_eliminate_agreement_with_classical_lift():
    """The residuation elimination and the realizable-lift route both
    produce valid eliminations; the residuation one is pointwise minimal."""
    field = Q2
    amb = projective(3, ("x", "y", "z"))
    ground = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    rows = [[F(1), F(1), F(1)], [F(1), F(2), F(4)]]
    M = VMatroid.from_rowspace(rows, ground, amb, field)
    Fvec = TropPoly(amb, {(1, 0, 0): 0, (0, 1, 0): 0, (0, 0, 1): 0})  # trop(x+y+z)
    Gvec = TropPoly(amb, {(1, 0, 0): 0, (0, 1, 0): 1, (0, 0, 1): 2})  # trop(x+2y+4z)
    u = (1, 0, 0)
    h_residuation = eliminate(M, Fvec, Gvec, u)
    # classical route: h = trop(F - c G) with c cancelling the u-coefficient
    Fc, Gc = rows
    c = Fc[0] / Gc[0]
    H = [a - c * b for a, b in zip(Fc, Gc)]
    h_classical = TropPoly(
        amb, {g: field.val(x) for g, x in zip(ground, H) if not field.is_zero(x)}
    )
    for h in (h_residuation, h_classical):
        assert h.coeff(u).is_inf
        for v in ground:
            fv, gv = Fvec.coeff(v), Gvec.coeff(v)
            assert h.coeff(v) >= fv + gv
            if fv != gv:
                assert h.coeff(v) == fv + gv
        assert is_vector(M, h)
    for v in ground:
        assert h_residuation.coeff(v) <= h_classical.coeff(v)


def test_initial_matroid_rank_preserved_randomized():
    rng = random.Random(4)
    field = ValuedField("p-adic", 3)
    amb = projective(5)
    ground = [tuple(1 if i == j else 0 for j in range(5)) for i in range(5)]
    for _ in range(10):
        rows = [
            [F(rng.randint(-9, 9)) for _ in range(5)] for _ in range(rng.randint(1, 3))
        ]
        M = VMatroid.from_rowspace(rows, ground, amb, field)
        weights = [F(rng.randint(-6, 6)) for _ in range(5)]
        init = M.initial_matroid(weights)
        assert init.rank == M.rank
        # circuits of the initial matroid are initial forms route-checked
        oracle = M.initial_matroid_from_circuits(weights)
        assert {frozenset(c.terms) for c in init.circuits()} == {
            frozenset(c.terms) for c in oracle.circuits()
        }


def test_circuits_closed_under_elimination_result_is_vector():
    M = point_ideal(2).part(2).matroid()
    circuits = M.circuits()
    for i, f in enumerate(circuits):
        for g in circuits[i + 1 :]:
            for u in set(f.terms) & set(g.terms):
                if f.terms[u] != g.terms[u]:
                    continue
                h = eliminate(M, f, g, u)
                assert is_vector(M, h)


def test_hypersurface_support_is_min_twice_locus():
    rng = random.Random(6)
    amb = laurent(2)
    for _ in range(12):
        f = rand_poly(rng, amb, nterms=(2, 5), laurent_ok=True)
        if len(f.terms) < 2:
            continue
        V = hypersurface(f)
        for _ in range(25):
            w = [F(rng.randint(-18, 18), rng.randint(1, 3)) for _ in range(2)]
            init = f.initial_form(w)
            on_variety = len(init.terms) >= 2
            assert V.complex.supports_point(w) == on_variety


def test_recession_fan_support_is_trivialized_variety():
    # Proposition 2.12: |recession fan of V(I)| = V(phi(I)) on the conic
    I = conic_chart(4)
    W = tg.weighted_variety(I, 1, dmax=2, mult_dmax=2)
    rec = recession_fan_weighted(W)
    triv = hypersurface(
        parse_poly("y oplus z oplus y*z oplus z^2", laurent(2, ("y", "z")))
    )
    assert weighted_complexes_equal(rec, triv)


def test_one_dimensional_boolean_variety_is_balanced_fan():
    # Lemma 6.5 on the trivialized conic: V is a fan and balanced
    I = conic_projective(2)
    triv = ti.trivialize_ideal(I)
    W = tg.weighted_variety(triv, 1, dmax=2, mult_dmax=2)
    for cell, _ in W.weighted_cells():
        assert cell.is_cone()
    ok, _ = is_balanced(W)
    assert ok


def test_stable_intersection_weight_invariance():
    V = hypersurface(parse_poly("y oplus z oplus y*z oplus 1 odot z^2", laurent(2, ("y", "z"))))
    rng = random.Random(8)
    totals = {
        stable_intersect_hyperplane(V, 0, F(rng.randint(-40, 40), rng.randint(1, 6))).total_weight()
        for _ in range(5)
    }
    assert totals == {2}


def test_ideal_level_initial_specialization_identity():
    """Lemma 3.8(2) at the truncation level: in_w(I|_{z=a}) = in_{(w,a)}(I)|_{z=0}
    compared through Hilbert data and circuit supports per degree."""
    I = conic_chart(4)
    a = F(5)
    w = [F(2)]
    S = ti.specialize_ideal(I, 1, a)  # set z = 5
    lhs = ti.initial_ideal(S, w)
    # right side: in_{(w,a)}(I), then specialize z at 0 tropically
    J = ti.initial_ideal(I, [w[0], a])
    R = ti.specialize_ideal(J, 1, F(0))
    for d in range(min(lhs.D, R.D) + 1):
        assert lhs.part(d).rank() == R.part(d).rank()


def test_colon_round_trip_torus_contracted():
    # Lemma 2.2(3): (I : m^inf) = I for torus-contracted ideals
    I = conic_chart(3)
    m = ti.product_of_variables(I, include_homogenizer=False)
    S = ti.saturate(I, m)
    assert S.D == I.D
    for d in range(S.D + 1):
        assert S.circuits(d) == I.circuits(d)


def test_prevariety_of_point_ideal_circuits():
    I = point_ideal(2)
    cx = tg.variety_complex(I, 1)
    assert tg.zero_cells(cx) == [(F(0), F(0))]


def test_star_weighted_balanced_everywhere():
    I = conic_chart(4)
    W = tg.weighted_variety(I, 1, dmax=2, mult_dmax=2)
    for w in [(F(0), F(0)), (F(0), F(-1)), (F(3), F(3))]:
        S = star_weighted(W, w)
        if S.weights:
            ok, _ = is_balanced(S)
            assert ok
