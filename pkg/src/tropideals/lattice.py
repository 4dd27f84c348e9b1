"""Integer lattice utilities: primitive vectors, Smith normal form with
transforms, lattice indices, saturated kernels, and unimodular completion
of a saturated row lattice.
"""

from __future__ import annotations

import math
from fractions import Fraction


def primitive(v) -> tuple:
    """Scale a nonzero rational vector to coprime integers, same direction."""
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ValueError("primitive of the zero vector")
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*(abs(x) for x in ints))
    return tuple(x // g for x in ints)


def _identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """U @ A @ V = S diagonal; returns (U, S, V) with U, V unimodular.

    A is a list of integer rows.  Diagonal entries divide successors.
    """
    A = [[int(x) for x in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot in the remaining block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0:
                    if pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(i, t)
                        done = False
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(j, t)
                        done = False
            if done:
                break
        if A[t][t] < 0:
            negate_row(t)
        # divisibility: fold any non-multiple into the pivot position
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        t += 1
    return U, A, V


def snf_diagonal(A) -> list:
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i] != 0]


def lattice_index(generators) -> int:
    """[Z^n : L] for the lattice L spanned by the generator rows; 0 if not full rank."""
    gens = [list(map(int, g)) for g in generators]
    if not gens:
        return 0
    n = len(gens[0])
    d = snf_diagonal(gens)
    if len(d) < n:
        return 0
    return abs(math.prod(d))


def saturated_basis_and_completion(rows):
    """Basis of (Q-span of rows) ∩ Z^n plus a completion to a Z-basis of Z^n.

    Returns (basis, completion): stacking them gives a unimodular matrix.
    """
    rows = [primitive(r) for r in rows if any(Fraction(x) != 0 for x in r)]
    if not rows:
        raise ValueError("empty lattice has no basis")
    n = len(rows[0])
    U, S, V = smith_normal_form([list(r) for r in rows])
    r = sum(1 for i in range(min(len(S), n)) if S[i][i] != 0)
    Vinv = invert_unimodular(V)
    basis = [tuple(Vinv[i]) for i in range(r)]
    completion = [tuple(Vinv[i]) for i in range(r, n)]
    return basis, completion


def invert_unimodular(M):
    """Exact inverse of a unimodular integer matrix (integer entries)."""
    n = len(M)
    aug = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular, not unimodular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def integer_kernel_basis(rows) -> list:
    """Saturated basis of {x in Z^n : rows @ x = 0} for rational rows."""
    rows = [[Fraction(x) for x in r] for r in rows]
    n = len(rows[0]) if rows else 0
    # rational kernel via RREF
    red = []
    pivots = []
    for row in rows:
        row = list(row)
        for r, c in zip(red, pivots):
            if row[c] != 0:
                f = row[c]
                row = [a - f * b for a, b in zip(row, r)]
        for c in range(n):
            if row[c] != 0:
                inv = 1 / row[c]
                row = [x * inv for x in row]
                red.append(row)
                pivots.append(c)
                break
    for i in range(len(red) - 1, -1, -1):
        for j in range(i):
            if red[j][pivots[i]] != 0:
                f = red[j][pivots[i]]
                red[j] = [a - f * b for a, b in zip(red[j], red[i])]
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return []
    ker = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, c in zip(red, pivots):
            vec[c] = -r[f]
        ker.append(primitive(vec))
    basis, _ = saturated_basis_and_completion(ker)
    return basis


def quotient_coordinates(completion_basis, v) -> tuple:
    """Coordinates of v in Z^n/(span of the saturated basis), via the completion.

    completion_basis: (basis, completion) from saturated_basis_and_completion.
    Returns the completion coordinates (integers for integer v).
    """
    basis, completion = completion_basis
    M = [list(b) for b in basis] + [list(c) for c in completion]
    n = len(M)
    # solve x = a @ M for a, take the completion part
    Minv = invert_unimodular(transpose_int(M))
    v = [Fraction(x) for x in v]
    coords = [sum(Fraction(Minv[i][j]) * v[j] for j in range(n)) for i in range(n)]
    return tuple(coords[len(basis):])


def transpose_int(M):
    return [[M[i][j] for i in range(len(M))] for j in range(len(M[0]))]
