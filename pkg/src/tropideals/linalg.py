"""Exact linear algebra over a ValuedField: reduced echelon forms, maximal
minors (memoized Laplace expansion, all column subsets at once), coordinate
subspace slicing, and initial-form reduction of a row space at a weight.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import ValuedField


def rref(rows, field: ValuedField):
    """Reduced row echelon form.  Returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, field: ValuedField) -> int:
    return len(rref(rows, field)[0])


def reduce_vector(vec, basis_rows, pivots, field: ValuedField):
    """Remainder of vec modulo the row space (basis in rref form)."""
    vec = list(vec)
    for row, c in zip(basis_rows, pivots):
        if not field.is_zero(vec[c]):
            f = vec[c]
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec

def in_rowspace(vec, basis_rows, pivots, field: ValuedField) -> bool:
    return all(field.is_zero(x) for x in reduce_vector(vec, basis_rows, pivots, field))


def supported_subspace(rows, cols, field: ValuedField):
    """Basis of the subspace of the row space supported on the given columns.

    Row-reduce with the complementary columns first; rows whose leading
    entries all fall inside `cols` are exactly the supported elements.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    cols = set(cols)
    others = [c for c in range(ncols) if c not in cols]
    order = others + sorted(cols)
    permuted = [[row[c] for c in order] for row in rows]
    red, pivots = rref(permuted, field)
    out = []
    for row, p in zip(red, pivots):
        if p < len(others):
            continue
        back = [field.zero] * ncols
        for j, c in enumerate(order):
            back[c] = row[j]
        out.append(back)
    return out


def kernel_basis(rows, field: ValuedField):
    """Basis of the right kernel {x : rows @ x = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        out.append(vec)
    return out


def all_maximal_minors(rows, field: ValuedField):
    """Determinants of every k x k column submatrix of a k x m matrix.

    Memoized Laplace expansion along the last row of the growing prefix;
    states are column subsets, so all C(m, k) minors share work.
    Returns a dict frozenset(columns) -> determinant.
    """
    k = len(rows)
    if k == 0:
        return {frozenset(): field.one}
    memo = {frozenset(): field.one}
    level = [frozenset()]
    m = len(rows[0])
    for r in range(k):
        nxt = {}
        for S in level:
            base = memo[S]
            cols = sorted(S)
            for c in range(m):
                if c in S:
                    continue
                T = S | {c}
                # sign from the position of c among sorted(T)
                pos = sum(1 for x in cols if x < c)
                sign = 1 if (len(cols) - pos) % 2 == 0 else -1
                term = rows[r][c] * base
                if sign < 0:
                    term = -term
                if T in nxt:
                    nxt[T] = nxt[T] + term
                else:
                    nxt[T] = term
        memo = nxt
        level = list(memo)
    return memo


def det(rows, field: ValuedField):
    """Determinant by fraction-free-ish Gaussian elimination (exact fields)."""
    n = len(rows)
    rows = [list(r) for r in rows]
    sign = field.one
    out = field.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if not field.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            return field.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        out = out * rows[c][c]
        inv = field.one / rows[c][c]
        for i in range(c + 1, n):
            if not field.is_zero(rows[i][c]):
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out * sign


def initial_rowspace(rows, weights, field: ValuedField):
    """Initial forms of a row space at a weight: a residue-field matrix.

    weights[j] is the tropical weight added to column j.  Repeatedly cancels
    residue-level dependencies among the rows' initial forms until the
    initial forms are independent over the residue field; then the matrix of
    residues spans in_w(rowspace).  Valuations and weights stay exact.
    """
    res_field = field.residue_field()
    rows = [list(r) for r in rows]
    weights = [Fraction(w) for w in weights]
    if not rows:
        return [], res_field
    max_rounds = 40 * (len(rows) + 1) * (len(rows[0]) + 1)
    for _ in range(max_rounds):
        deltas = []
        residues = []
        for row in rows:
            best = None
            for j, x in enumerate(row):
                if field.is_zero(x):
                    continue
                v = field.val(x) + weights[j]
                if best is None or v < best:
                    best = v
            if best is None:
                raise ValueError("zero row in initial_rowspace")
            deltas.append(best)
            res = []
            for j, x in enumerate(row):
                if not field.is_zero(x) and field.val(x) + weights[j] == best:
                    res.append(res_field.lift(0) + field.residue(x, field.val(x)))
                else:
                    res.append(res_field.zero)
            residues.append(res)
        # look for a residue-field dependency among the initial forms
        red, pivots = rref(residues, res_field)
        if len(red) == len(rows):
            return residues, res_field
        dep = _first_dependency(residues, res_field)
        # replace the row with the largest delta appearing in the dependency;
        # rows whose delta differs by a non-value-group amount have disjoint
        # residue support, so the dependency splits by delta class
        idx = max((i for i in dep), key=lambda i: deltas[i])
        top = deltas[idx]
        new_row = None
        for i, coef in dep.items():
            if not field.value_group_contains(top - deltas[i]):
                continue
            lift = _lift_residue(coef, field)
            scale = lift * _uniformizer_power(field, top - deltas[i])
            term = [scale * x for x in rows[i]]
            new_row = term if new_row is None else [a + b for a, b in zip(new_row, term)]
        rows[idx] = new_row
    raise RuntimeError("initial_rowspace did not stabilize")


def _first_dependency(rows, field: ValuedField):
    """A nontrivial dependency among rows, as {row index: coefficient}."""
    augmented = [list(r) + [field.one if i == j else field.zero for j in range(len(rows))] for i, r in enumerate(rows)]
    width = len(rows[0])
    red, pivots = rref(augmented, field)
    for row, p in zip(red, pivots):
        if p >= width:
            return {i: row[width + i] for i in range(len(rows)) if not field.is_zero(row[width + i])}
    raise ValueError("rows are independent")


def _lift_residue(r, field: ValuedField):
    """Lift a residue-field element back into the field (valuation 0)."""
    from .fields import FINITE_TRIVIAL, P_ADIC, T_ADIC, GFElement

    if field.kind == P_ADIC:
        assert isinstance(r, GFElement)
        return Fraction(r.r)
    if field.kind == T_ADIC:
        from .fields import RatFunc

        return RatFunc.const(r)
    return r


def _uniformizer_power(field: ValuedField, a: Fraction):
    return field.element_with_valuation(a)
