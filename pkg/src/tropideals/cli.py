"""Command-line driver: parse ideal descriptions, run computations, and emit
deterministic JSON result envelopes (``--pretty`` for tables).

Exit codes: 0 success, 2 caveat-bearing partial result, 1 error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from . import geometry as tg
from . import ideals as ti
from .complexes import (
    is_balanced,
    recession_fan,
    stable_intersect_hyperplane,
    star_weighted,
)
from .config import GuardExceeded
from .fields import field_from_spec
from .parsing import (
    IdealFileError,
    complex_to_json,
    complex_to_svg,
    load_complex_file,
    load_ideal_file,
)
from .poly import ParseError, TermOrder, format_poly, parse_poly
from .semiring import INF
from .univariate import factor as factor_univariate


class CliError(RuntimeError):
    pass


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p.encode() if isinstance(p, str) else p)
        h.update(b"\x00")
    return h.hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e}")


def _parse_point(text: str) -> list:
    return [Fraction(x) for x in text.replace(",", " ").split()]


def _order(name: str, n: int) -> TermOrder:
    from .poly import lex, revlex

    if name == "lex":
        return lex(n)
    if name == "revlex":
        return revlex(n)
    raise CliError(f"unknown term order {name!r} (use lex or revlex)")


def _frac(x) -> str:
    return str(Fraction(x))


def _poly_json(f) -> str:
    return format_poly(f)


def _cells_payload(cx, weights=None, dim=None):
    return complex_to_json(cx, weights, dim)


def _load_ideal(args) -> ti.IdealTruncation:
    text = _read(args.ideal)
    return load_ideal_file(text, args.degree_bound)


def _envelope(command: str, args, payload, caveats, extra_inputs=()) -> dict:
    digest_parts = [command]
    if getattr(args, "ideal", None):
        digest_parts.append(_read(args.ideal))
    digest_parts.extend(extra_inputs)
    return {
        "version": 1,
        "command": command,
        "inputs": {"digest": _digest(*digest_parts)},
        "degree_bound": getattr(args, "degree_bound", None),
        "seed": getattr(args, "seed", 0),
        "caveats": sorted(set(caveats)),
        "payload": payload,
    }


# -- subcommand implementations ------------------------------------------------


def cmd_eval(args):
    f = parse_poly(args.poly)
    w = _parse_point(args.weight)
    val = f.evaluate(w)
    return {"polynomial": _poly_json(f), "point": [_frac(x) for x in w],
            "value": "inf" if val.is_inf else _frac(val.value)}, []


def cmd_factor(args):
    f = parse_poly(args.poly)
    fac = factor_univariate(f)
    return {
        "polynomial": _poly_json(f),
        "unit": _frac(fac.unit.value),
        "power_of_x": fac.power_of_x,
        "roots": [[_frac(w.value), m] for w, m in fac.roots],
    }, []


def cmd_trop(args):
    I = _load_ideal(args)
    payload = {
        "ambient": {"kind": I.user_ambient.kind, "vars": list(I.user_ambient.names)},
        "projective_vars": list(I.proj.names),
        "degree_bound": I.D,
        "provenance": I.provenance,
        "hilbert": ti.hilbert_values(I),
        "circuits": {
            str(d): [_poly_json(c) for c in I.circuits(d)] for d in range(I.D + 1)
        },
    }
    return payload, list(I.caveats)


def cmd_hilbert(args):
    I = _load_ideal(args)
    if args.d is not None:
        return {"degree": args.d, "value": ti.hilbert_function(I, args.d)}, list(I.caveats)
    return {"values": ti.hilbert_values(I)}, list(I.caveats)


def cmd_dim(args):
    I = _load_ideal(args)
    coeffs, dim = ti.hilbert_polynomial(I)
    return {
        "dimension": dim,
        "hilbert_polynomial": [_frac(c) for c in coeffs],
    }, list(I.caveats)


def cmd_degree(args):
    I = _load_ideal(args)
    return {"degree": ti.degree(I)}, list(I.caveats)


def cmd_initial(args):
    I = _load_ideal(args)
    if (args.w is None) == (args.order is None):
        raise CliError("initial needs exactly one of -w WEIGHTS or -o ORDER")
    if args.w is not None:
        J = ti.initial_ideal(I, _parse_point(args.w))
        payload = {
            "weight": args.w,
            "circuits": {str(d): [_poly_json(c) for c in J.circuits(d)] for d in range(J.D + 1)},
            "hilbert": ti.hilbert_values(J),
        }
        return payload, list(J.caveats)
    order = _order(args.order, I.nvars_proj)
    data = ti.initial_ideal_termorder(I, order)
    payload = {
        "order": args.order,
        "min_generators": [list(u) for u in data.min_generators],
        "standard_monomials": {str(d): [list(u) for u in data.standard[d]] for d in data.standard},
    }
    return payload, list(I.caveats)


def cmd_cone(args):
    I = _load_ideal(args)
    order = _order(args.order, I.nvars_proj)
    cone = ti.term_order_cone(I, order)
    return {
        "order": args.order,
        "ineqs": [[[_frac(x) for x in a], _frac(b)] for a, b in cone.ineqs],
        "eqs": [[[_frac(x) for x in a], _frac(b)] for a, b in cone.eqs],
    }, list(I.caveats)


def cmd_variety(args):
    I = _load_ideal(args)
    cx = tg.variety_complex(I, args.degree_bound)
    caveats = list(I.caveats) + [f"prevariety of circuits <= {args.degree_bound or I.D}"]
    if args.weights:
        dim = ti.dimension(I)
        W = tg.weighted_variety(I, dim, args.degree_bound)
        return _cells_payload(W.complex, W.weights, dim), caveats
    return _cells_payload(cx), caveats


def cmd_groebner_complex(args):
    I = _load_ideal(args)
    GC = tg.groebner_complex(I, args.degree_bound)
    caveats = list(I.caveats) + [f"Groebner complex at D = {args.degree_bound or I.D}"]
    return _cells_payload(GC), caveats


def cmd_star(args):
    I = _load_ideal(args)
    dim = ti.dimension(I)
    W = tg.weighted_variety(I, dim, args.degree_bound)
    S = star_weighted(W, _parse_point(args.w))
    caveats = list(I.caveats) + [f"prevariety of circuits <= {args.degree_bound or I.D}"]
    return _cells_payload(S.complex, S.weights, S.dim), caveats


def cmd_recession_fan(args):
    I = _load_ideal(args)
    GC = tg.groebner_complex(I, args.degree_bound)
    fan = recession_fan(GC)
    caveats = list(I.caveats) + [f"Groebner complex at D = {args.degree_bound or I.D}"]
    return _cells_payload(fan), caveats


def cmd_mult(args):
    I = _load_ideal(args)
    w = _parse_point(args.w)
    dim = ti.dimension(I)
    if dim == 0:
        m = ti.multiplicity_zero_dim(I, w)
        return {"point": [_frac(x) for x in w], "multiplicity": m}, list(I.caveats)
    cell = tg.variety_cell_at(I, w)
    if cell is None or not cell.relint_contains_point(w) or cell.dim() != dim:
        raise CliError("the point is not in the relative interior of a maximal cell")
    m = tg.cell_multiplicity(I, cell)
    return {"point": [_frac(x) for x in w], "cell_dim": dim, "multiplicity": m}, list(I.caveats)


def cmd_balance(args):
    W = load_complex_file(_read(args.complex))
    ok, witness = is_balanced(W)
    payload = {"balanced": ok}
    if witness is not None:
        payload["witness"] = {
            "eqs": [[[_frac(x) for x in a], _frac(b)] for a, b in witness.eqs],
            "ineqs": [[[_frac(x) for x in a], _frac(b)] for a, b in witness.ineqs],
        }
    return payload, []


def cmd_stable_intersect(args):
    W = load_complex_file(_read(args.complex))
    out = stable_intersect_hyperplane(W, args.i, Fraction(args.a))
    return _cells_payload(out.complex, out.weights, out.dim), []


def cmd_specialize(args):
    I = _load_ideal(args)
    a = INF if args.a in ("inf", "Inf", "INF") else Fraction(args.a)
    rng = random.Random(args.seed)
    S = ti.specialize_ideal(I, args.i, a, rng=rng)
    payload = {
        "variable": I.user_ambient.names[args.i],
        "value": "inf" if a is INF else _frac(a),
        "degree_bound": S.D,
        "hilbert": ti.hilbert_values(S),
        "circuits": {str(d): [_poly_json(c) for c in S.circuits(d)] for d in range(S.D + 1)},
    }
    return payload, list(S.caveats)


def cmd_eliminate(args):
    I = _load_ideal(args)
    names = list(I.user_ambient.names)
    keep = []
    for nm in args.keep.replace(",", " ").split():
        if nm not in names:
            raise CliError(f"unknown variable {nm!r}")
        keep.append(names.index(nm))
    E = ti.eliminate_vars(I, keep)
    payload = {
        "kept": [names[k] for k in keep],
        "hilbert": ti.hilbert_values(E),
        "circuits": {str(d): [_poly_json(c) for c in E.circuits(d)] for d in range(E.D + 1)},
    }
    return payload, list(E.caveats)


def cmd_validate(args):
    from .vmatroid import check_monomial_elimination

    I = _load_ideal(args)
    report = {}
    ok_all = True
    for d in range(I.D + 1):
        m = I.part(d).matroid()
        entry = {"rank": m.rank}
        try:
            ok, witness = m.check_exchange_axiom()
            entry["exchange_axiom"] = ok
            if not ok:
                ok_all = False
                entry["exchange_witness"] = [sorted(witness[0]), sorted(witness[1]), witness[2]]
        except GuardExceeded as e:
            entry["exchange_axiom"] = f"skipped ({e})"
        circuits = I.circuits(d)
        ok, witness = check_monomial_elimination(circuits)
        entry["monomial_elimination"] = ok
        if not ok:
            ok_all = False
            entry["elimination_witness"] = [
                _poly_json(witness[0]), _poly_json(witness[1]), list(witness[2])
            ]
        report[str(d)] = entry
    caveats = list(I.caveats)
    if not ok_all:
        caveats.append("validation failed")
    return {"valid": ok_all, "by_degree": report}, caveats


def cmd_export(args):
    I = _load_ideal(args)
    what = args.what
    if what == "variety":
        if args.weights:
            dim = ti.dimension(I)
            W = tg.weighted_variety(I, dim, args.degree_bound)
            cx, weights, dim_out = W.complex, W.weights, W.dim
        else:
            cx, weights, dim_out = tg.variety_complex(I, args.degree_bound), None, None
    elif what == "groebner-complex":
        cx, weights, dim_out = tg.groebner_complex(I, args.degree_bound), None, None
    else:
        raise CliError("export --what must be variety or groebner-complex")
    caveats = list(I.caveats) + [f"circuits <= {args.degree_bound or I.D}"]
    if args.format == "svg":
        svg = complex_to_svg(cx, weights)
        return {"svg": svg}, caveats
    return _cells_payload(cx, weights, dim_out), caveats


# -- driver ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropideals", description=__doc__)
    p.add_argument("--seed", type=int, default=0, help="seed for all randomized routines")
    p.add_argument("--degree-bound", type=int, default=None, help="override the file's D")
    p.add_argument("--pretty", action="store_true", help="human-readable output")
    # the same globals are accepted after the subcommand; SUPPRESS keeps the
    # subparser from clobbering values given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--degree-bound", type=int, default=argparse.SUPPRESS)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", cmd_eval, help="evaluate a tropical polynomial at a point")
    sp.add_argument("poly")
    sp.add_argument("-w", "--weight", required=True)

    sp = add("factor", cmd_factor, help="factor a univariate tropical polynomial")
    sp.add_argument("poly")

    for name, fn in [
        ("trop", cmd_trop), ("hilbert", cmd_hilbert), ("dim", cmd_dim),
        ("degree", cmd_degree), ("initial", cmd_initial), ("cone", cmd_cone),
        ("variety", cmd_variety), ("groebner-complex", cmd_groebner_complex),
        ("star", cmd_star), ("recession-fan", cmd_recession_fan),
        ("mult", cmd_mult), ("specialize", cmd_specialize),
        ("eliminate", cmd_eliminate), ("validate", cmd_validate),
        ("export", cmd_export),
    ]:
        sp = add(name, fn)
        sp.add_argument("ideal", help="ideal description file (JSON)")
        if name == "hilbert":
            sp.add_argument("-d", type=int, default=None)
        if name == "initial":
            sp.add_argument("-w", default=None)
            sp.add_argument("-o", "--order", default=None)
        if name == "cone":
            sp.add_argument("-o", "--order", required=True)
        if name in ("star", "mult"):
            sp.add_argument("-w", required=True)
        if name == "specialize":
            sp.add_argument("-i", type=int, required=True)
            sp.add_argument("-a", required=True)
        if name == "eliminate":
            sp.add_argument("--keep", required=True)
        if name in ("variety", "export"):
            sp.add_argument("--weights", action="store_true")
        if name == "export":
            sp.add_argument("--what", default="variety")
            sp.add_argument("--format", default="json", choices=["json", "svg"])

    sp = add("balance", cmd_balance, help="verify the balancing condition")
    sp.add_argument("complex", help="weighted complex file (JSON)")

    sp = add("stable-intersect", cmd_stable_intersect,
             help="stable intersection with a coordinate hyperplane")
    sp.add_argument("complex", help="weighted complex file (JSON)")
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-a", required=True)
    return p


def _pretty(payload, caveats) -> str:
    lines = []

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _scalar_list(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_inline(v)}")
        elif isinstance(obj, list):
            for v in obj:
                lines.append(f"{pad}- {_inline(v)}")

    def _scalar_list(v):
        return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)

    def _inline(v):
        if isinstance(v, list):
            return "[" + ", ".join(str(x) for x in v) + "]"
        return str(v)

    walk(payload)
    for c in caveats:
        lines.append(f"caveat: {c}")
    return "\n".join(lines) + "\n"


def run(argv) -> tuple:
    """Returns (exit_code, output_text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (int(e.code or 0), "")
    try:
        payload, caveats = args.fn(args)
    except (CliError, IdealFileError, ParseError, ti.TruncationError,
            ti.StabilizationError, GuardExceeded, ValueError) as e:
        err = {"version": 1, "command": args.command, "error": str(e)}
        return (1, json.dumps(err, sort_keys=True) + "\n")
    env = _envelope(args.command, args, payload, caveats)
    if args.pretty:
        out = _pretty(payload, caveats)
    else:
        out = json.dumps(env, sort_keys=True) + "\n"
    return (2 if caveats_blocking(caveats) else 0, out)


def caveats_blocking(caveats) -> bool:
    benign_prefixes = ("Groebner complex at D", "circuits <=", "prevariety of circuits <=")
    return any(not c.startswith(benign_prefixes) for c in caveats)


def main() -> None:
    code, out = run(sys.argv[1:])
    sys.stdout.write(out)
    sys.exit(code)


if __name__ == "__main__":
    main()
