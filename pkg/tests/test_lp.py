import random
from fractions import Fraction

from tropideals.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible, maximize, minimize, solve_lp


def test_basic_max():
    # max x + y st x <= 2, y <= 3, x + y <= 4
    res = maximize(2, [1, 1], ineqs=[([1, 0], 2), ([0, 1], 3), ([1, 1], 4)])
    assert res.status == OPTIMAL
    assert res.value == 4


def test_free_variables_and_equalities():
    # max x st x + y = 1, x - y <= 3  ->  x = 2, y = -1
    res = maximize(2, [1, 0], ineqs=[([1, -1], 3)], eqs=[([1, 1], 1)])
    assert res.status == OPTIMAL
    assert res.value == 2
    assert res.point == [Fraction(2), Fraction(-1)]


def test_unbounded():
    res = maximize(1, [1], ineqs=[([-1], 0)])
    assert res.status == UNBOUNDED


def test_infeasible():
    res = maximize(1, [1], ineqs=[([1], 0), ([-1], -1)])
    assert res.status == INFEASIBLE
    assert not feasible(1, ineqs=[([1], 0), ([-1], -1)])


def test_exact_fractions():
    res = minimize(1, [1], ineqs=[([-3], Fraction(-1, 7))])
    assert res.status == OPTIMAL
    assert res.value == Fraction(1, 21)


def test_degenerate_cycling_guard():
    # classic degenerate example; Bland's rule must terminate
    res = minimize(
        4,
        [Fraction(-3, 4), 150, Fraction(-1, 50), 6],
        ineqs=[
            ([Fraction(1, 4), -60, Fraction(-1, 25), 9], 0),
            ([Fraction(1, 2), -90, Fraction(-1, 50), 3], 0),
            ([0, 0, 1, 0], 1),
        ],
    )
    assert res.status in (OPTIMAL, UNBOUNDED)


def test_randomized_against_bruteforce_vertices():
    rng = random.Random(13)
    for _ in range(25):
        # random bounded 2d polygon: box plus random cuts
        ineqs = [([1, 0], 5), ([-1, 0], 5), ([0, 1], 5), ([0, -1], 5)]
        for _ in range(3):
            a = [rng.randint(-3, 3), rng.randint(-3, 3)]
            if a == [0, 0]:
                continue
            ineqs.append((a, rng.randint(-2, 8)))
        c = [rng.randint(-4, 4), rng.randint(-4, 4)]
        res = maximize(2, c, ineqs=ineqs)
        if res.status != OPTIMAL:
            assert res.status == INFEASIBLE
            continue
        # brute force: intersect all constraint pairs, keep feasible vertices
        best = None
        m = len(ineqs)
        for i in range(m):
            for j in range(i + 1, m):
                (a1, b1), (a2, b2) = ineqs[i], ineqs[j]
                det = Fraction(a1[0]) * a2[1] - Fraction(a1[1]) * a2[0]
                if det == 0:
                    continue
                x = (Fraction(b1) * a2[1] - Fraction(a1[1]) * b2) / det
                y = (Fraction(a1[0]) * b2 - Fraction(b1) * a2[0]) / det
                if all(Fraction(a[0]) * x + a[1] * y <= b for a, b in ineqs):
                    v = c[0] * x + c[1] * y
                    best = v if best is None else max(best, v)
        assert best is not None
        assert res.value == best
