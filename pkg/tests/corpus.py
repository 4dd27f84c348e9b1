"""Shared desk-scale ideal instances used across the test modules."""

from fractions import Fraction as F

import tropideals.ideals as ti
from tropideals.fields import RatFunc, ValuedField
from tropideals.poly import affine, laurent, projective

Q = ValuedField("trivial")
Q2 = ValuedField("p-adic", 2)
Kt = ValuedField("t-adic")

T_ONE = RatFunc.const(1)
T = RatFunc.t_power(1)


def point_ideal(D=3):
    """trop<x1 - x0, x2 - x0>: the point [0:0:0] in trop(P^2)."""
    real = ti.Realization(
        Q,
        [
            {(0, 1, 0): F(1), (1, 0, 0): F(-1)},
            {(0, 0, 1): F(1), (1, 0, 0): F(-1)},
        ],
        projective(3),
    )
    return ti.tropicalize(real, D)


def conic_projective(D=3):
    """trop<xy + xz + yz + 2 z^2> over Q with the 2-adic valuation."""
    real = ti.Realization(
        Q2,
        [{(1, 1, 0): F(1), (1, 0, 1): F(1), (0, 1, 1): F(1), (0, 0, 2): F(2)}],
        projective(3, ("x", "y", "z")),
    )
    return ti.tropicalize(real, D)


def conic_chart(D=4):
    """The conic dehomogenized at x: trop<y + z + yz + 2 z^2>, Laurent."""
    real = ti.Realization(
        Q2,
        [{(1, 0): F(1), (0, 1): F(1), (1, 1): F(1), (0, 2): F(2)}],
        laurent(2, ("y", "z")),
    )
    return ti.tropicalize(real, D)


def cubic_univariate(D=7):
    """trop<x^3 + t x^2 + x + t> over Q(t): tropicalization x^3+1x^2+x+1."""
    real = ti.Realization(
        Kt,
        [{(3,): T_ONE, (2,): T, (1,): T_ONE, (0,): T}],
        affine(1, ("x",)),
    )
    return ti.tropicalize(real, D)


def quadratic_t(D=6):
    """trop<(x-1)(x-t)> = trop<x^2 - (1+t)x + t> over Q(t)."""
    real = ti.Realization(
        Kt,
        [{(2,): T_ONE, (1,): RatFunc([-1, -1]), (0,): T}],
        affine(1, ("x",)),
    )
    return ti.tropicalize(real, D)


def two_lines(D=6):
    """trop<x + y + 1, x + 2y + 4> over Q, 2-adic: one point of degree 1."""
    real = ti.Realization(
        Q2,
        [
            {(1, 0): F(1), (0, 1): F(1), (0, 0): F(1)},
            {(1, 0): F(1), (0, 1): F(2), (0, 0): F(4)},
        ],
        affine(2, ("x", "y")),
    )
    return ti.tropicalize(real, D)


def example35(D=1):
    """trop<x1 - 1, x2 - x3>: Example of a specialization needing closure."""
    real = ti.Realization(
        Q,
        [
            {(1, 0, 0): F(1), (0, 0, 0): F(-1)},
            {(0, 1, 0): F(1), (0, 0, 1): F(-1)},
        ],
        affine(3, ("x1", "x2", "x3")),
    )
    return ti.tropicalize(real, D)


def line_trivial(D=3):
    """trop<x + y + 1>, trivial valuation, affine plane curve of degree 1."""
    real = ti.Realization(
        Q,
        [{(1, 0): F(1), (0, 1): F(1), (0, 0): F(1)}],
        affine(2, ("x", "y")),
    )
    return ti.tropicalize(real, D)


def circle_trivial(D=4):
    """trop<x^2 + y^2 + 1>, trivial valuation: rays of weight 2."""
    real = ti.Realization(
        Q,
        [{(2, 0): F(1), (0, 2): F(1), (0, 0): F(1)}],
        affine(2, ("x", "y")),
    )
    return ti.tropicalize(real, D)


def zero_ideal_p2(D=4):
    real = ti.Realization(Q, [], projective(3))
    return ti.tropicalize(real, D)
