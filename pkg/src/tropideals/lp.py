"""Exact rational linear programming: dense two-phase simplex with Bland's
rule.  Sized for the small systems that arise from normal complexes and
balancing checks; everything is Fractions, no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: str
    point: list | None = None  # values of the original free variables
    value: Fraction | None = None


def solve_lp(nvars: int, objective, ineqs=(), eqs=(), maximize: bool = True) -> LPResult:
    """Optimize objective·y over {y : a·y <= b for ineqs, a·y = b for eqs}.

    Free variables are split into positive parts internally.  Returns an
    optimal vertex point, or a certificate status.
    """
    objective = [Fraction(c) for c in objective]
    if len(objective) != nvars:
        raise ValueError("objective length mismatch")
    rows = []
    rhs = []
    kinds = []
    for a, b in ineqs:
        rows.append([Fraction(x) for x in a])
        rhs.append(Fraction(b))
        kinds.append("<=")
    for a, b in eqs:
        rows.append([Fraction(x) for x in a])
        rhs.append(Fraction(b))
        kinds.append("=")
    m = len(rows)
    nslack = sum(1 for k in kinds if k == "<=")
    width = 2 * nvars + nslack  # y+ , y-, slacks
    A = []
    b = []
    si = 0
    for row, beta, kind in zip(rows, rhs, kinds):
        full = [Fraction(0)] * width
        for j, x in enumerate(row):
            full[j] = x
            full[nvars + j] = -x
        if kind == "<=":
            full[2 * nvars + si] = Fraction(1)
            si += 1
        if beta < 0:
            full = [-x for x in full]
            beta = -beta
        A.append(full)
        b.append(beta)
    # objective: minimize -obj (y+ - y-) when maximizing
    cost = [Fraction(0)] * width
    for j, cj in enumerate(objective):
        cost[j] = -cj if maximize else cj
        cost[nvars + j] = cj if maximize else -cj

    res = _two_phase(A, b, cost, width)
    if res[0] != OPTIMAL:
        return LPResult(res[0])
    x, value = res[1], res[2]
    point = [x[j] - x[nvars + j] for j in range(nvars)]
    return LPResult(OPTIMAL, point, -value if maximize else value)


def _two_phase(A, b, cost, n):
    m = len(A)
    # phase 1 tableau with artificial variables
    T = [row[:] + [Fraction(0)] * m + [bi] for row, bi in zip(A, b)]
    for i in range(m):
        T[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n + m) + [Fraction(0)]
    for i in range(m):
        for j in range(n + m + 1):
            obj[j] -= T[i][j]
    for j in range(n, n + m):
        obj[j] += Fraction(1)
    status = _iterate(T, obj, basis, n + m)
    if status != OPTIMAL:
        return (status, None, None)
    if obj[-1] != 0:
        return (INFEASIBLE, None, None)
    # drive artificials out of the basis
    drop = []
    for i in range(m):
        if basis[i] >= n:
            piv = None
            for j in range(n):
                if T[i][j] != 0:
                    piv = j
                    break
            if piv is None:
                drop.append(i)
            else:
                _pivot(T, basis, i, piv)
    for i in sorted(drop, reverse=True):
        del T[i]
        del basis[i]
    m2 = len(T)
    # shrink away artificial columns
    for i in range(m2):
        T[i] = T[i][:n] + [T[i][-1]]
    # phase 2 objective
    obj2 = cost[:] + [Fraction(0)]
    for i in range(m2):
        bv = basis[i]
        if obj2[bv] != 0:
            f = obj2[bv]
            obj2 = [a - f * t for a, t in zip(obj2, T[i])]
    status = _iterate(T, obj2, basis, n)
    if status != OPTIMAL:
        return (status, None, None)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = T[i][-1]
    return (OPTIMAL, x, obj2[-1] * Fraction(-1))


def _iterate(T, obj, basis, ncols) -> str:
    limit = 20000
    for _ in range(limit):
        enter = None
        for j in range(ncols):
            if obj[j] < 0:
                enter = j  # Bland: first improving column
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(len(T)):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(T, basis, leave, enter)
        f = obj[enter]
        if f != 0:
            obj[:] = [a - f * t for a, t in zip(obj, T[leave])]
    raise RuntimeError("simplex iteration limit exceeded")


def _pivot(T, basis, row, col):
    inv = 1 / T[row][col]
    T[row] = [x * inv for x in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col] != 0:
            f = T[i][col]
            T[i] = [a - f * t for a, t in zip(T[i], T[row])]
    basis[row] = col


def feasible(nvars: int, ineqs=(), eqs=()) -> bool:
    res = solve_lp(nvars, [0] * nvars, ineqs, eqs, maximize=False)
    return res.status == OPTIMAL


def maximize(nvars: int, objective, ineqs=(), eqs=()) -> LPResult:
    return solve_lp(nvars, objective, ineqs, eqs, maximize=True)


def minimize(nvars: int, objective, ineqs=(), eqs=()) -> LPResult:
    return solve_lp(nvars, objective, ineqs, eqs, maximize=False)
