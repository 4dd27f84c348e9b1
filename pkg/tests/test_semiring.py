from fractions import Fraction

from tropideals.semiring import INF, TropScalar, as_trop, trop_min


def test_min_plus_identities():
    a = TropScalar(Fraction(3, 2))
    b = TropScalar(2)
    assert a + b == a
    assert a * b == TropScalar(Fraction(7, 2))
    assert a + INF == a
    assert a * INF == INF
    assert INF + INF == INF
    assert a * TropScalar(0) == a


def test_order_and_infinity():
    assert TropScalar(1) < TropScalar(2) < INF
    assert INF == INF
    assert not INF < INF
    assert as_trop(None).is_inf
    assert trop_min([]) == INF
    assert trop_min([3, 1, 2]) == TropScalar(1)


def test_powers():
    assert TropScalar(2) ** 3 == TropScalar(6)
    assert TropScalar(Fraction(1, 3)) ** -3 == TropScalar(-1)
    assert INF ** 0 == TropScalar(0)
    assert INF ** 2 == INF


def test_exactness():
    third = TropScalar(Fraction(1, 3))
    assert (third * third * third) == TropScalar(1)
    assert third + TropScalar(Fraction(333333, 1000000)) == TropScalar(Fraction(333333, 1000000))
