"""Valuated matroids on finite monomial ground sets.

A VMatroid carries one of three representations: an exact realization
(row space over a valued field), a basis valuation dictionary p, or a
circuit list; the others are derived on demand.  Vectors are TropPoly
instances supported on the ground set, normalized so the minimal finite
coefficient is 0.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .config import axiom_guard, check_guard, circuit_guard
from .fields import ValuedField
from .poly import Ambient, TropPoly, grlex_key
from .semiring import INF, TropScalar


def normalize_vector(v: TropPoly) -> TropPoly:
    """Scale so the minimal finite coefficient is 0 (identity on the inf poly)."""
    if v.is_inf:
        return v
    m = min(v.terms.values())
    return v.scalar_mul(-m)


def vector_sort_key(v: TropPoly):
    return tuple(sorted(((grlex_key(u), c) for u, c in v.terms.items())))


class VMatroid:
    """Valuated matroid on an ordered ground set of monomials."""

    def __init__(self, ground, rank: int, ambient: Ambient):
        self.ground = tuple(tuple(u) for u in ground)
        self.index = {u: i for i, u in enumerate(self.ground)}
        if len(self.index) != len(self.ground):
            raise ValueError("duplicate ground set elements")
        self.rank = rank
        self.ambient = ambient
        self._matrix = None  # rows spanning the realization's row space
        self._field = None
        self._p = None  # dict frozenset(indices) -> Fraction, finite bases only
        self._circuits = None  # list of normalized TropPoly

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_rowspace(cls, rows, ground, ambient: Ambient, field: ValuedField) -> "VMatroid":
        ground = [tuple(u) for u in ground]
        if rows and any(len(r) != len(ground) for r in rows):
            raise ValueError("row length does not match the ground set")
        basis, _ = linalg.rref(rows, field)
        m = cls(ground, len(ground) - len(basis), ambient)
        m._matrix = basis
        m._field = field
        return m

    @classmethod
    def from_p(cls, ground, rank: int, p, ambient: Ambient) -> "VMatroid":
        m = cls(ground, rank, ambient)
        clean = {}
        for B, val in dict(p).items():
            B = frozenset(B)
            if len(B) != rank:
                raise ValueError("basis of wrong size in p")
            if val is None or (isinstance(val, TropScalar) and val.is_inf):
                continue
            clean[B] = Fraction(val.value if isinstance(val, TropScalar) else val)
        if rank > 0 and not clean:
            raise ValueError("at least one finite basis required")
        if rank == 0:
            clean = {frozenset(): Fraction(0)}
        m._p = clean
        return m

    @classmethod
    def from_circuits(cls, ground, circuits, ambient: Ambient) -> "VMatroid":
        m = cls(ground, 0, ambient)
        m._circuits = m._dedup_circuits(circuits)
        m.rank = m._rank_from_circuits()
        return m

    @classmethod
    def free(cls, ground, ambient: Ambient) -> "VMatroid":
        m = cls(ground, len(tuple(ground)), ambient)
        m._circuits = []
        m._p = {frozenset(range(m.rank)): Fraction(0)}
        return m

    # -- core accessors ----------------------------------------------------------

    @property
    def corank(self) -> int:
        return len(self.ground) - self.rank

    def p_map(self) -> dict:
        """Basis valuations as {frozenset(indices): Fraction}."""
        if self._p is None:
            if self._matrix is not None:
                self._p = self._p_from_matrix()
            elif self._circuits is not None:
                self._p = self._p_from_circuits()
            else:
                raise ValueError("matroid has no representation")
        return self._p

    def p(self, B) -> TropScalar:
        B = frozenset(self.index[tuple(u)] if not isinstance(u, int) else u for u in B)
        v = self.p_map().get(B)
        return INF if v is None else TropScalar(v)

    def bases(self):
        return sorted(self.p_map(), key=sorted)

    def is_basis(self, B) -> bool:
        return frozenset(B) in self.p_map()

    def _p_from_matrix(self) -> dict:
        rows, field = self._matrix, self._field
        m = len(self.ground)
        k = len(rows)
        check_guard("basis-enumeration", _comb(m, k), 300000)
        minors = linalg.all_maximal_minors(rows, field) if k else {frozenset(): field.one}
        out = {}
        for S, d in minors.items():
            if field.is_zero(d):
                continue
            out[frozenset(range(m)) - S] = field.val(d)
        return out

    def _p_from_circuits(self) -> dict:
        """Reconstruct basis valuations by basis-exchange BFS from the circuits."""
        circs = self.circuits()
        supports = [frozenset(self.index[u] for u in c.terms) for c in circs]
        m = len(self.ground)
        check_guard("circuit-enumeration", m, circuit_guard())

        def independent(T):
            return not any(s <= T for s in supports)

        # greedy basis
        B = set()
        for i in range(m):
            if len(B) == self.rank:
                break
            if independent(B | {i}):
                B.add(i)
        if len(B) != self.rank:
            raise ValueError("circuits do not admit a basis of the declared rank")
        start = frozenset(B)
        out = {start: Fraction(0)}
        queue = [start]
        while queue:
            B = queue.pop()
            pB = out[B]
            for e in range(m):
                if e in B:
                    continue
                cands = [
                    (c, s) for c, s in zip(circs, supports) if s <= (B | {e}) and e in s
                ]
                if not cands:
                    continue  # B ∪ e independent in a larger matroid; cannot happen at full rank
                c, s = cands[0]
                ce = c.terms[self.ground[e]]
                for x in s:
                    if x == e:
                        continue
                    B2 = frozenset((B - {x}) | {e})
                    val = pB + c.terms[self.ground[x]] - ce
                    if B2 in out:
                        if out[B2] != val:
                            raise ValueError("inconsistent circuit valuations (not a valuated matroid)")
                    else:
                        out[B2] = val
                        queue.append(B2)
        return out

    # -- independence -----------------------------------------------------------------

    def is_independent(self, T) -> bool:
        T = frozenset(self.index[tuple(u)] if not isinstance(u, int) else u for u in T)
        if len(T) > self.rank:
            return False
        if self._matrix is not None:
            # independent in the dual iff the complementary columns still span
            others = [c for c in range(len(self.ground)) if c not in T]
            cols = [[row[c] for row in self._matrix] for c in others]
            return linalg.rank(cols, self._field) == len(self._matrix)
        if self._circuits is not None:
            return not any(
                frozenset(self.index[u] for u in c.terms) <= T for c in self._circuits
            )
        return any(T <= B for B in self.p_map())

    def _rank_from_circuits(self) -> int:
        supports = [frozenset(self.index[u] for u in c.terms) for c in self._circuits]
        B = set()
        for i in range(len(self.ground)):
            if not any(s <= B | {i} for s in supports):
                B.add(i)
        return len(B)

    # -- circuits and fundamental circuits -------------------------------------------------

    def circuits(self) -> list:
        if self._circuits is None:
            if self._matrix is not None:
                self._circuits = self._circuits_from_matrix()
            else:
                self._circuits = self._circuits_from_p()
        return list(self._circuits)

    def _dedup_circuits(self, circuits) -> list:
        by_key = {}
        for c in circuits:
            c = normalize_vector(c)
            if c.is_inf:
                continue
            by_key.setdefault(frozenset(c.terms), []).append(c)
        minimal = [k for k in by_key if not any(k2 < k for k2 in by_key)]
        out = []
        for k in minimal:
            vecs = by_key[k]
            if any(v != vecs[0] for v in vecs[1:]):
                raise ValueError("two support-minimal circuits share a support but differ")
            out.append(vecs[0])
        return sorted(out, key=vector_sort_key)

    def _circuits_from_matrix(self) -> list:
        """Support-minimal row-space elements: via hyperplanes of the column
        matroid, or by enumerating candidate supports of size <= rank + 1,
        whichever enumeration is smaller."""
        rows, field = self._matrix, self._field
        m = len(self.ground)
        k = len(rows)
        if k == 0:
            return []
        r = self.rank
        hyper_cost = _comb(m, k - 1) * (k * k * m)
        support_cost = sum(_comb(m, s) for s in range(1, r + 2)) * (r + 1) ** 2 * (r + 2)
        if support_cost < hyper_cost:
            return self._circuits_by_support()
        if field.kind == "finite-trivial":
            return self._circuits_from_matrix_modp()
        cols = [[row[c] for row in rows] for c in range(m)]
        check_guard("circuit-enumeration", _comb(m, k - 1), 300000)
        hyperplanes = set()
        for S in itertools.combinations(range(m), k - 1):
            sub = [cols[c] for c in S]
            red, piv = linalg.rref(sub, field)
            if len(red) != k - 1:
                continue
            H = frozenset(
                c for c in range(m) if linalg.in_rowspace(cols[c], red, piv, field)
            )
            hyperplanes.add(H)
        out = []
        for H in hyperplanes:
            D = sorted(set(range(m)) - H)
            vecs = linalg.supported_subspace(rows, D, field)
            if len(vecs) != 1:
                raise RuntimeError("cocircuit space is not one-dimensional")
            v = vecs[0]
            terms = {
                self.ground[c]: field.val(v[c]) for c in D if not field.is_zero(v[c])
            }
            out.append(normalize_vector(TropPoly(self.ambient, terms)))
        return self._dedup_circuits(out)

    def _circuits_from_matrix_modp(self) -> list:
        """Hyperplane enumeration over F_p with plain int arithmetic (the
        generic route spends most of its time in field-element overhead)."""
        p = self._field.p
        rows = [[x.r % p for x in row] for row in self._matrix]
        m = len(self.ground)
        k = len(rows)
        cols = [[row[c] for row in rows] for c in range(m)]
        check_guard("circuit-enumeration", _comb(m, k - 1), 300000)

        def rref_int(mat):
            mat = [r[:] for r in mat]
            piv = []
            r = 0
            width = len(mat[0]) if mat else 0
            for c in range(width):
                row = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
                if row is None:
                    continue
                mat[r], mat[row] = mat[row], mat[r]
                inv = pow(mat[r][c], -1, p)
                mat[r] = [(x * inv) % p for x in mat[r]]
                for i in range(len(mat)):
                    if i != r and mat[i][c] % p:
                        f = mat[i][c]
                        mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[r])]
                piv.append(c)
                r += 1
                if r == len(mat):
                    break
            return mat[:r], piv

        def reduces_to_zero(vec, red, piv):
            vec = vec[:]
            for row, c in zip(red, piv):
                if vec[c] % p:
                    f = vec[c]
                    vec = [(a - f * b) % p for a, b in zip(vec, row)]
            return all(x % p == 0 for x in vec)

        hyperplanes = set()
        for S in itertools.combinations(range(m), k - 1):
            red, piv = rref_int([cols[c] for c in S])
            if len(red) != k - 1:
                continue
            H = frozenset(c for c in range(m) if reduces_to_zero(cols[c], red, piv))
            hyperplanes.add(H)
        out = []
        for H in hyperplanes:
            # the cocircuit's support is exactly the hyperplane complement,
            # and the valuation is trivial: all coefficients are 0
            terms = {self.ground[c]: 0 for c in set(range(m)) - H}
            out.append(TropPoly(self.ambient, terms))
        return self._dedup_circuits(out)

    def _circuits_by_support(self) -> list:
        """Minimal dependent column sets of the row space's annihilator.

        The vectors of this matroid are the row space elements, so a set T
        supports one iff the annihilator's columns on T are dependent; the
        annihilator has only rank-many rows, keeping each check tiny.
        """
        rows, field = self._matrix, self._field
        m = len(self.ground)
        check_guard(
            "circuit-enumeration",
            sum(_comb(m, s) for s in range(1, self.rank + 2)),
            300000,
        )
        ann = linalg.kernel_basis(rows, field)  # rank-many rows of length m
        found = []
        supports = []
        for s in range(1, self.rank + 2):
            for T in itertools.combinations(range(m), s):
                Tset = frozenset(T)
                if any(sp <= Tset for sp in supports):
                    continue
                restricted = [[row[c] for c in T] for row in ann]
                combo = linalg.kernel_basis(restricted, field)
                if not combo:
                    continue
                v = combo[0]
                terms = {
                    self.ground[c]: field.val(x)
                    for c, x in zip(T, v)
                    if not field.is_zero(x)
                }
                supports.append(frozenset(self.index[u] for u in terms))
                found.append(normalize_vector(TropPoly(self.ambient, terms)))
        return self._dedup_circuits(found)

    def _circuits_from_p(self) -> list:
        check_guard("circuit-enumeration", len(self.ground), circuit_guard())
        out = []
        ground_idx = range(len(self.ground))
        for B in self.p_map():
            for e in ground_idx:
                if e in B:
                    continue
                c = self.fundamental_circuit(B, e)
                out.append(c)
        return self._dedup_circuits(out)

    def fundamental_circuit(self, B, e) -> TropPoly:
        """Circuit of e over the basis B: coefficient at x is p((B ∪ e) \\ x)."""
        Bidx = frozenset(self.index[tuple(u)] if not isinstance(u, int) else u for u in B)
        eidx = self.index[tuple(e)] if not isinstance(e, int) else e
        if eidx in Bidx:
            raise ValueError("e must lie outside the basis")
        if not self.is_basis(Bidx):
            raise ValueError("B is not a finite-valuation basis")
        p = self.p_map()
        terms = {}
        for x in Bidx | {eidx}:
            val = p.get(frozenset((Bidx | {eidx}) - {x}))
            if val is not None:
                terms[self.ground[x]] = val
        return normalize_vector(TropPoly(self.ambient, terms))

    # -- initial matroids ---------------------------------------------------------------------

    def initial_matroid(self, weights) -> "VMatroid":
        """in_w(M), trivially valued; weights aligned with the ground set."""
        weights = [Fraction(w) for w in weights]
        if len(weights) != len(self.ground):
            raise ValueError("one weight per ground element required")
        if self._matrix is not None and len(self._matrix) > 0:
            residues, res_field = linalg.initial_rowspace(self._matrix, weights, self._field)
            return VMatroid.from_rowspace(residues, self.ground, self.ambient, res_field)
        if self._matrix is not None:  # free matroid
            return VMatroid.free(self.ground, self.ambient)
        if self._p is not None:
            scores = {B: v - sum(weights[i] for i in B) for B, v in self.p_map().items()}
            best = min(scores.values())
            bases = {B: Fraction(0) for B, s in scores.items() if s == best}
            return VMatroid.from_p(self.ground, self.rank, bases, self.ambient)
        inits = [self._initial_of_vector(c, weights) for c in self.circuits()]
        return VMatroid.from_circuits(self.ground, inits, self.ambient)

    def _initial_of_vector(self, c: TropPoly, weights) -> TropPoly:
        best = None
        arg = []
        for u, coef in c.terms.items():
            v = coef + weights[self.index[u]]
            if best is None or v < best:
                best, arg = v, [u]
            elif v == best:
                arg.append(u)
        return TropPoly(self.ambient, {u: 0 for u in arg})

    def initial_matroid_from_circuits(self, weights) -> "VMatroid":
        """Oracle route: support-minimal initial forms of the circuits."""
        weights = [Fraction(w) for w in weights]
        inits = [self._initial_of_vector(c, weights) for c in self.circuits()]
        return VMatroid.from_circuits(self.ground, inits, self.ambient)

    def trivialization(self) -> "VMatroid":
        """The underlying matroid, trivially valued (p = 0 on all finite bases)."""
        if self._matrix is not None:
            return VMatroid.from_rowspace(
                self._matrix, self.ground, self.ambient, ValuedField("trivial")
            )
        if self._circuits is not None:
            return VMatroid.from_circuits(
                self.ground, [c.trivialize() for c in self._circuits], self.ambient
            )
        zeros = {B: Fraction(0) for B in self.p_map()}
        return VMatroid.from_p(self.ground, self.rank, zeros, self.ambient)

    # -- the Dress-Wenzel exchange axiom ----------------------------------------------------------

    def check_exchange_axiom(self):
        """(ok, witness): witness = (B1, B2, i) with no valid exchange j."""
        check_guard("axiom-check", len(self.ground), axiom_guard())
        p = self.p_map()
        bases = list(p)
        for B1 in bases:
            for B2 in bases:
                for i in B1 - B2:
                    ok = False
                    for j in B2 - B1:
                        left = p[B1] + p[B2]
                        r1 = p.get(frozenset((B1 - {i}) | {j}))
                        r2 = p.get(frozenset((B2 - {j}) | {i}))
                        if r1 is None or r2 is None:
                            continue
                        if left >= r1 + r2:
                            ok = True
                            break
                    if not ok:
                        return False, (sorted(B1), sorted(B2), i)
        return True, None


def _comb(n: int, k: int) -> int:
    import math

    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# -- vectors, spans, and monomial elimination ------------------------------------------------------


def span_floor(generators, target: dict, allowed, ambient: Ambient) -> TropPoly:
    """Pointwise-minimal span element h with supp(h) ⊆ allowed and h ≥ target.

    target maps exponent -> Fraction lower bound on the allowed support.
    Admissible generators are those supported inside `allowed`; min-plus
    combinations cannot cancel, so a generator with support outside is
    unusable.  For each admissible C the minimal scale is
    max_e (target[e] - C_e).
    """
    allowed = set(allowed)
    out = TropPoly(ambient, {})
    for C in generators:
        if C.is_inf or not set(C.terms) <= allowed:
            continue
        lam = max(target[u] - c for u, c in C.terms.items())
        out = out + C.scalar_mul(lam)
    return out


def is_vector(vectors_or_matroid, h: TropPoly) -> bool:
    """Is h a tropical combination of the given circuits/generators?"""
    gens = (
        vectors_or_matroid.circuits()
        if isinstance(vectors_or_matroid, VMatroid)
        else list(vectors_or_matroid)
    )
    if h.is_inf:
        return True
    out = TropPoly(h.ambient, {})
    for C in gens:
        if C.is_inf or not set(C.terms) <= set(h.terms):
            continue
        lam = max(h.terms[u] - c for u, c in C.terms.items())
        out = out + C.scalar_mul(lam)
    return out == h


class EliminationError(ValueError):
    """No elimination exists in the provided span (or the span is too small)."""

    def __init__(self, f, g, u, candidate, missing):
        self.f, self.g, self.u = f, g, u
        self.candidate = candidate
        self.missing = missing  # monomials where the forced coefficient is not met
        super().__init__(
            f"no elimination of {u} found in the span; "
            f"forced coefficients missed at {sorted(missing)}"
        )


def eliminate(span, f: TropPoly, g: TropPoly, u, require: bool = True) -> TropPoly:
    """An elimination h of the monomial u from f and g, inside the given span.

    span: a VMatroid or an iterable of vectors generating the candidate
    space.  h satisfies: [h]_u = inf, [h]_v >= min([f]_v, [g]_v) for all v,
    with equality whenever [f]_v != [g]_v.  Raises EliminationError when no
    such h exists in the span (with the minimal candidate attached).
    """
    u = tuple(u)
    fu, gu = f.coeff(u), g.coeff(u)
    if fu.is_inf or gu.is_inf or fu != gu:
        raise ValueError("elimination requires equal finite coefficients at u")
    gens = span.circuits() if isinstance(span, VMatroid) else list(span)
    ambient = f.ambient
    allowed = (set(f.terms) | set(g.terms)) - {u}
    target = {}
    forced = {}
    for v in allowed:
        fv, gv = f.coeff(v), g.coeff(v)
        t = fv + gv  # tropical addition is min
        target[v] = t.value
        if fv != gv:
            forced[v] = t.value
    h = span_floor(gens, target, allowed, ambient)
    missing = {v for v, t in forced.items() if h.coeff(v) != TropScalar(t)}
    if missing and require:
        raise EliminationError(f, g, u, h, missing)
    return h


def elimination_candidate(f: TropPoly, g: TropPoly, u) -> TropPoly:
    """(f ⊕ g) with the u-coefficient deleted: the closure candidate."""
    s = f + g
    return TropPoly(s.ambient, {v: c for v, c in s.terms.items() if v != tuple(u)})


def check_monomial_elimination(vectors, span=None):
    """(ok, witness) for the monomial elimination axiom over a vector list.

    Every pair with a shared finite coefficient must admit an elimination
    inside `span` (default: the span of the list itself).
    """
    vectors = [v for v in vectors if not v.is_inf]
    gens = span if span is not None else vectors
    monomials = set()
    for v in vectors:
        monomials |= set(v.terms)
    check_guard("elimination-check", len(monomials), 4 * circuit_guard())
    for i, f in enumerate(vectors):
        for g in vectors[i + 1 :]:
            for u in set(f.terms) & set(g.terms):
                if f.terms[u] != g.terms[u]:
                    continue
                try:
                    eliminate(gens, f, g, u)
                except EliminationError:
                    return False, (f, g, u)
    return True, None
