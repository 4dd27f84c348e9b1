"""Classical polynomial expressions over a valued field, and the ideal
description file format (JSON).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fields import RatFunc, T_ADIC, ValuedField, field_from_spec
from .poly import AFFINE, Ambient, LAURENT, PROJECTIVE, ParseError, TropPoly, _Tokens, parse_poly
from .ideals import Realization, IdealTruncation, explicit_truncation, tropicalize


def _const_poly(c, n):
    return {(0,) * n: c}


class _ClassicalParser:
    """expr := term (('+'|'-') term)*; term := factor+ with '*' optional;
    factor := base ('^' int)?; base := rational | var | 't' | '(' expr ')'"""

    def __init__(self, toks: _Tokens, names, field: ValuedField, text: str):
        self.toks = toks
        self.names = list(names)
        self.field = field
        self.n = len(self.names)
        self.text = text

    def _mul(self, a: dict, b: dict) -> dict:
        out = {}
        for u, cu in a.items():
            for v, cv in b.items():
                w = tuple(x + y for x, y in zip(u, v))
                term = cu * cv
                out[w] = out.get(w, self.field.zero) + term
        return {u: c for u, c in out.items() if not self.field.is_zero(c)}

    def _add(self, a: dict, b: dict, sign=1) -> dict:
        out = dict(a)
        for u, c in b.items():
            term = c if sign > 0 else self.field.zero - c
            out[u] = out.get(u, self.field.zero) + term
        return {u: c for u, c in out.items() if not self.field.is_zero(c)}

    def parse_expr(self) -> dict:
        kind, _, _ = self.toks.peek()
        neg = False
        if kind == "-":
            self.toks.next()
            neg = True
        node = self.parse_term()
        if neg:
            node = self._add({}, node, -1)
        while self.toks.peek()[0] in ("+", "-"):
            op = self.toks.next()[0]
            rhs = self.parse_term()
            node = self._add(node, rhs, 1 if op == "+" else -1)
        return node

    def parse_term(self) -> dict:
        node = self.parse_factor()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "*":
                self.toks.next()
                node = self._mul(node, self.parse_factor())
            elif kind in ("num", "name", "("):
                node = self._mul(node, self.parse_factor())
            else:
                return node

    def parse_factor(self) -> dict:
        base = self.parse_base()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            neg = False
            if self.toks.peek()[0] == "-":
                self.toks.next()
                neg = True
            e = int(self.toks.expect("num")[1])
            if neg:
                # Laurent monomial inverse: only pure variables invert
                if len(base) != 1:
                    raise ParseError("negative powers apply to variables only", 0, self.text)
                (u, c), = base.items()
                return {tuple(-e * x for x in u): self.field.one / c}
            out = _const_poly(self.field.one, self.n)
            for _ in range(e):
                out = self._mul(out, base)
            return out
        return base

    def parse_base(self) -> dict:
        kind, val, pos = self.toks.next()
        if kind == "num":
            q = Fraction(int(val))
            if self.toks.peek()[0] == "/":
                self.toks.next()
                q = Fraction(int(val), int(self.toks.expect("num")[1]))
            return _const_poly(self.field.lift(q), self.n)
        if kind == "name":
            if val == "t":
                if self.field.kind != T_ADIC:
                    raise ParseError("'t' needs the t-adic field", pos, self.text)
                return _const_poly(RatFunc.t_power(1), self.n)
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            u = [0] * self.n
            u[self.names.index(val)] = 1
            return {tuple(u): self.field.one}
        if kind == "(":
            node = self.parse_expr()
            self.toks.expect(")")
            return node
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_classical(text: str, names, field: ValuedField) -> dict:
    toks = _Tokens(text)
    parser = _ClassicalParser(toks, names, field, text)
    out = parser.parse_expr()
    toks.expect("end")
    return out


# -- ideal description files ---------------------------------------------------------


class IdealFileError(ValueError):
    pass


def ambient_from_json(obj) -> Ambient:
    kind = obj.get("kind")
    if kind not in (AFFINE, LAURENT, PROJECTIVE):
        raise IdealFileError(f"unknown ambient kind {kind!r}")
    names = obj.get("vars")
    if not names or not isinstance(names, list):
        raise IdealFileError("ambient needs a nonempty 'vars' list")
    return Ambient(kind, len(names), tuple(names))


def load_ideal_file(text: str, degree_bound: int | None = None) -> IdealTruncation:
    """Parse an ideal description (JSON) into a truncation.

    Keys: version, ambient {kind, vars}, field, degree_bound, and either
    'generators' (classical polynomials) or 'circuits' (tropical
    polynomials per projective degree).
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise IdealFileError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if obj.get("version") != 1:
        raise IdealFileError("unsupported or missing version (expected 1)")
    ambient = ambient_from_json(obj.get("ambient", {}))
    D = degree_bound if degree_bound is not None else obj.get("degree_bound")
    if not isinstance(D, int) or D < 0:
        raise IdealFileError("degree_bound must be a nonnegative integer")
    if "generators" in obj:
        field = field_from_spec(obj.get("field", "trivial"))
        gens = [parse_classical(s, ambient.names, field) for s in obj["generators"]]
        real = Realization(field, gens, ambient)
        return tropicalize(real, D)
    if "circuits" in obj:
        if ambient.kind == PROJECTIVE:
            proj = ambient
        else:
            from .poly import projective

            proj = projective(ambient.nvars + 1, ("x0",) + ambient.names)
        by_degree = {}
        for key, items in obj["circuits"].items():
            d = int(key)
            by_degree[d] = [parse_poly(s, proj) for s in items]
        return explicit_truncation(ambient, by_degree, D, proj_ambient=proj)
    raise IdealFileError("ideal file needs 'generators' or 'circuits'")


# -- weighted complex files --------------------------------------------------------------


def _frac_to_str(q) -> str:
    return str(Fraction(q))


def cell_to_json(poly, weight=None):
    out = {
        "ineqs": [[[_frac_to_str(x) for x in a], _frac_to_str(b)] for a, b in poly.ineqs],
        "eqs": [[[_frac_to_str(x) for x in a], _frac_to_str(b)] for a, b in poly.eqs],
        "dim": poly.dim(),
    }
    if weight is not None:
        out["weight"] = weight
    return out


def complex_to_json(cx, weights=None, dim=None):
    cells = []
    incidence = []
    polys = cx.polyhedra()
    for i, p in enumerate(polys):
        w = None if weights is None else weights.get(p)
        cells.append(cell_to_json(p, w))
        row = [j for j, q in enumerate(polys) if j != i and q.contains_poly(p)]
        incidence.append(row)
    out = {"version": 1, "nvars": cx.nvars, "cells": cells, "incidence": incidence}
    if dim is not None:
        out["dim"] = dim
    return out


def load_complex_file(text: str):
    """Parse a serialized weighted complex back into a WeightedComplex."""
    from .complexes import PolyComplex, WeightedComplex
    from .polyhedron import Polyhedron

    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise IdealFileError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if obj.get("version") != 1:
        raise IdealFileError("unsupported or missing version (expected 1)")
    nvars = obj["nvars"]
    cells = []
    weights = {}
    for cell in obj["cells"]:
        ineqs = [([Fraction(x) for x in a], Fraction(b)) for a, b in cell.get("ineqs", [])]
        eqs = [([Fraction(x) for x in a], Fraction(b)) for a, b in cell.get("eqs", [])]
        p = Polyhedron(nvars, ineqs, eqs)
        cells.append(p)
        if cell.get("weight") is not None:
            weights[p] = int(cell["weight"])
    cx = PolyComplex(nvars, cells)
    dim = obj.get("dim")
    if dim is None:
        dim = max((p.dim() for p in weights), default=cx.dim())
    return WeightedComplex(cx, weights, dim)


# -- 2D SVG export ---------------------------------------------------------------------------


def complex_to_svg(cx, weights=None, size: int = 360, margin: int = 24) -> str:
    """Static SVG picture of a 2-dimensional ambient complex (rays clipped)."""
    if cx.nvars != 2:
        raise ValueError("SVG export draws complexes in the plane only")
    verts = []
    for c in cx.cells:
        if c.poly.dim() == 0:
            verts.append(c.poly.relint_point())
    span = max([abs(x) for v in verts for x in v] + [Fraction(1)])
    box = float(span) * 2 + 2

    def to_px(pt):
        x = float(pt[0]) / box * (size - 2 * margin) + size / 2
        y = -float(pt[1]) / box * (size - 2 * margin) + size / 2
        return x, y

    lines = []
    for c in cx.cells:
        if c.poly.dim() != 1:
            continue
        p = c.poly
        w = p.relint_point()
        rec = p.recession()
        direction = None
        if rec.dim() >= 1:
            direction = rec.relint_point()
            if all(x == 0 for x in direction):
                direction = p.span_lattice_basis()[0]
        # endpoints: vertices of the edge, or a clipped ray
        ends = [v for v in verts if p.contains_point(v)]
        if len(ends) >= 2:
            seg = (ends[0], ends[1])
        elif len(ends) == 1 and direction is not None:
            far = tuple(a + Fraction(3) * span * b for a, b in zip(ends[0], direction))
            seg = (ends[0], far)
        elif direction is not None:
            lo = tuple(a - Fraction(3) * span * b for a, b in zip(w, direction))
            hi = tuple(a + Fraction(3) * span * b for a, b in zip(w, direction))
            seg = (lo, hi)
        else:
            continue
        (x1, y1), (x2, y2) = to_px(seg[0]), to_px(seg[1])
        label = ""
        if weights and p in weights and weights[p] != 1:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            label = f'<text x="{mx:.1f}" y="{my:.1f}" font-size="11">{weights[p]}</text>'
        lines.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f'stroke="black" stroke-width="1.5"/>' + label
        )
    for v in verts:
        x, y = to_px(v)
        lines.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="2.5" fill="black"/>')
    body = "\n".join(lines)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n{body}\n</svg>\n'
    )
