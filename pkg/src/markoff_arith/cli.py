"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 selftest failure, 2 bad input or precondition, 3 bound exceeded.
"""
from __future__ import annotations

import argparse
import ast
import json
import random
import sys
from fractions import Fraction

from . import curves, fibers, slopes_trees, surface, torus_lattice
from .errors import BoundExceededError, PreconditionError
from .exactnum import Poly, QuadElt, RatFunc, parse_rational
from .surface import SurfacePoint, ring_to_json

EXIT_OK, EXIT_SELFTEST, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3


class InputError(PreconditionError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- input parsing ----------------------------------------------------------------

def parse_surface(text: str) -> surface.MarkoffSurface:
    """``torus:k``, ``sphere:k1,k2,k3,k4`` or ``raw:eps,a,b,c,d``."""
    kind, _, body = text.partition(":")
    try:
        nums = [int(v) for v in body.split(",")] if body else []
    except ValueError as exc:
        raise InputError(f"malformed surface {text!r}") from exc
    arity = {"torus": 1, "sphere": 4, "raw": 5}
    if kind not in arity or len(nums) != arity[kind]:
        raise InputError(f"malformed surface {text!r}; expected torus:k, sphere:k1,k2,k3,k4 or raw:eps,a,b,c,d")
    return {"torus": surface.from_torus, "sphere": surface.from_sphere, "raw": surface.raw}[kind](*nums)


def parse_expr(text: str):
    """Rational expression in ``T`` with optional ``sqrt(n)``; Fraction, QuadElt or RatFunc."""
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"malformed expression {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "T":
            return RatFunc.T()
        if isinstance(node, ast.Call) and getattr(node.func, "id", None) == "sqrt" and len(node.args) == 1:
            n = ev(node.args[0])
            if not isinstance(n, Fraction) or n.denominator != 1:
                raise InputError("sqrt takes an integer")
            return QuadElt.sqrt(n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                e = ev(node.right)
                if not isinstance(e, Fraction) or e.denominator != 1:
                    raise InputError("exponents must be integers")
                return left ** int(e)
            right = ev(node.right)
            ops = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
                   ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}
            if type(node.op) in ops:
                if isinstance(left, QuadElt) and isinstance(right, RatFunc):
                    left = RatFunc(left)
                return ops[type(node.op)](left, right)
        raise InputError(f"unsupported expression {text!r}")

    v = ev(tree.body)
    if isinstance(v, RatFunc) and v.is_constant():
        v = v.constant_value()
    return v


def parse_point(text: str) -> SurfacePoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError(f"malformed point {text!r}; expected x,y,z")
    vals = []
    for v in parts:
        r = parse_rational(v)
        vals.append(r.numerator if r.denominator == 1 else r)
    return SurfacePoint(*vals)


def parse_triple(text: str) -> tuple:
    parts = text.split(";") if ";" in text else text.split(",")
    if len(parts) != 3:
        raise InputError(f"malformed triple {text!r}")
    return tuple(parse_expr(v) for v in parts)


def _as_value(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, QuadElt) and v.s == 0:
        return v.r
    return v


def _polynomial_coords(coords):
    out = []
    for v in coords:
        v = _as_value(v)
        if isinstance(v, RatFunc):
            out.append(v)
        else:
            out.append(RatFunc(Poly.const(v)))
    return out


def parse_matrix_arg(text: str):
    body = text.strip().replace(" ", "")
    if not (body.startswith("[[") and body.endswith("]]")):
        raise InputError(f"malformed matrix {text!r}")
    rows = [r.split(",") for r in body[2:-2].split("],[")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise InputError("expected a 2x2 matrix")
    return tuple(tuple(_as_value(parse_expr(v)) for v in r) for r in rows)


# -- output helpers ---------------------------------------------------------------

def _pt(p):
    return [ring_to_json(v) for v in p]


def surface_report(s: surface.MarkoffSurface) -> dict:
    out = {"surface": s.to_json(), "equation": str(s),
           "symmetries": [g.to_json() for g in surface.symmetries(s)]}
    if isinstance(surface.moduli(s), surface.Torus):
        eps, a, b, c, d = surface.trace_chart(s)
        out["trace_chart"] = {"eps": eps, "a": a, "b": b, "c": c, "d": d,
                              "equation": f"x^2+y^2+z^2-xyz = {d}",
                              "involution": "(x, y, z) -> (-x, y, z)"}
    return out


# -- commands ---------------------------------------------------------------------

def cmd_surface(args):
    if args.kind == "torus":
        if len(args.params) != 1:
            raise InputError("surface torus takes k")
        s = surface.from_torus(*args.params)
    elif args.kind == "sphere":
        if len(args.params) != 4:
            raise InputError("surface sphere takes k1 k2 k3 k4")
        s = surface.from_sphere(*args.params)
    else:
        if len(args.params) != 5:
            raise InputError("surface raw takes eps a b c d")
        s = surface.raw(*args.params)
    return surface_report(s)


def cmd_descend(args):
    s = parse_surface(args.surface)
    p = parse_point(args.point)
    q, word = surface.descend(s, p)
    return {"start": _pt(p), "minimal": _pt(q), "word": surface.word_to_json(word),
            "norms": _norm_trace(s, p, word)}


def _norm_trace(s, p, word):
    norms = [surface.norm(p)]
    for letter in word:
        p = surface.apply_letter(s, p, letter)
        norms.append(surface.norm(p))
    return norms


def cmd_orbit(args):
    s = parse_surface(args.surface)
    p, q = parse_point(args.p), parse_point(args.q)
    word = surface.orbit_equal(s, p, q, args.depth)
    out = {"p": _pt(p), "q": _pt(q), "depth": args.depth, "connected": word is not None}
    if word is not None:
        out["word"] = surface.word_to_json(word)
    return out


def cmd_enumerate(args):
    s = parse_surface(args.surface)
    if args.d:
        return {"rings": [{"d": d, "points": [_pt(p) for p in fibers.points_over_Od(s, d, args.H)]}
                          for d in args.d]}
    pts = surface.enumerate_minimal(s, args.H, workers=args.workers)
    out = {"minimal_points": [_pt(p) for p in pts], "count": len(pts)}
    if surface._torus_flip(s):
        out["trace_minimal_points"] = [_pt(surface.to_trace(s, p)) for p in pts]
    return out


def cmd_fiber(args):
    s = parse_surface(args.surface)
    t = _as_value(parse_expr(args.t))
    if args.action == "classify":
        return fibers.classify_fiber(s, args.axis, t).to_json()
    if args.action == "conic":
        c = fibers.fiber_conic(s, args.axis, t)
        return {"conic": c.to_json(), "determinant": str(c.determinant()),
                "degenerate_constant": str(fibers.degenerate_constant(s, args.axis, t))}
    if args.action == "parabolic-param":
        fam = fibers.parametrize_parabolic_fiber(s, args.axis, t)
        return {"family": fam.to_json(), "verified": fibers.verify_family(s, fam)}
    if args.action == "points":
        if not (isinstance(t, Fraction) and t.denominator == 1):
            raise InputError("integral fiber points need an integer t")
        return fibers.fiber_integral_points(s, args.axis, int(t), args.H).to_json()
    # orbit: replay the generator from a point (trace coordinates)
    if args.point is None:
        raise InputError("fiber orbit needs --point")
    p = parse_point(args.point)
    steps = []
    q = p
    for _ in range(args.n):
        q = fibers.generator_step(s, args.axis, q)
        steps.append(_pt(q))
    back = []
    q = p
    for _ in range(args.n):
        q = fibers.generator_step(s, args.axis, q, inverse=True)
        back.append(_pt(q))
    return {"start": _pt(p), "forward": steps, "backward": back,
            "period": fibers.orbit_period(s, args.axis, p)}


def _curve_from_args(args, s):
    if args.param:
        parts = args.param.split(";")
        if len(parts) != 3:
            raise InputError("--param takes 'x(T);y(T);z(T)'")
        coords = _polynomial_coords([parse_expr(v) for v in parts])
        return curves.parametrized_curve(s, coords, chart=args.chart or "trace")
    if not args.constraint:
        raise InputError("give --constraint or --param")
    return curves.implicit_curve(s, args.constraint, chart=args.chart or "canonical")


def cmd_curve(args):
    s = parse_surface(args.surface)
    c = _curve_from_args(args, s)
    if args.action == "classify":
        out = {"curve": c.to_json(), "classification": curves.classify_curve(c, args.slope_bound).to_json()}
        if isinstance(c.shape, curves.Parametrized) and out["classification"]["status"] == "nonintegrable":
            out["infinity_witnesses"] = [w.to_json() for w in curves.infinity_witnesses(c, args.slope_bound)]
        return out
    ring = "Z" if args.ring == "Z" else int(args.ring)
    return {"curve": c.to_json(), "solution": curves.solve_curve_integral(c, ring, args.H, args.slope_bound).to_json()}


def cmd_solve(args):
    s = parse_surface(args.surface)
    sol = curves.corollary5_solve(s, args.constraint or [], args.H, chart=args.chart or "canonical",
                                  slope_bound=args.slope_bound)
    return {"surface": surface_report(s), "constraints": args.constraint or [], "solution": sol.to_json()}


def cmd_slope(args):
    sl = slopes_trees.Slope.parse(args.slope)
    if args.action == "poly":
        return {"slope": str(sl), "polynomial": str(slopes_trees.trace_polynomial(sl))}
    if args.triple is None:
        raise InputError("slope trace needs --triple")
    tr = slopes_trees.trace_of_slope(sl, parse_triple(args.triple))
    return {"slope": str(sl), "trace": slopes_trees._fmt(_as_value(tr))}


def cmd_tree(args):
    g = parse_matrix_arg(args.matrix)
    place = slopes_trees.place_from_text(args.p)
    tr = slopes_trees.mat_trace(g)
    return {"place": args.p, "trace": slopes_trees._fmt(tr), "length": slopes_trees.translation_length(g, place)}


def cmd_systole(args):
    place = slopes_trees.place_from_text(args.place)
    if args.matrices:
        source = tuple(parse_matrix_arg(m) for m in args.matrices)
    elif args.triple:
        source = parse_triple(args.triple)
    else:
        raise InputError("systole needs --triple or --matrices A B")
    return {"place": args.place, "witness": slopes_trees.systole_search(source, place, args.slope_bound).to_json()}


def cmd_torus_lattice(args):
    f = torus_lattice.parse_xy(args.f)
    out = {"f": torus_lattice.poly_to_json(f)}
    if args.x is None or args.y is None:
        raise InputError("torus-lattice needs --x and --y")
    prob = torus_lattice.LatticePointProblem(f, parse_rational(args.x), parse_rational(args.y))
    if args.action == "solve":
        out["solutions"] = [list(v) for v in torus_lattice.exponential_solutions(prob, args.M)]
        out["bound"] = args.M
    else:
        out["result"] = torus_lattice.classify_dichotomy(prob, args.M).to_json()
    return out


def cmd_selftest(args):
    from .selftest import run_selftest
    return run_selftest(seed=args.seed, rounds=args.rounds)


# -- argument parsing ---------------------------------------------------------------

def _common(p, H=100):
    p.add_argument("--H", type=int, default=H, help="height bound (max |coord|)")
    p.add_argument("--slope-bound", type=int, default=curves.DEFAULT_SLOPE_BOUND)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--workers", type=int, default=None,
                   help="scan worker processes (default from MARKOFF_ARITH_WORKERS)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="markoff-arith", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("surface")
    p.add_argument("kind", choices=["torus", "sphere", "raw"])
    p.add_argument("params", type=int, nargs="*")
    _common(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("descend")
    p.add_argument("--surface", required=True)
    p.add_argument("--point", required=True)
    _common(p)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("orbit")
    p.add_argument("--surface", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    _common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("enumerate")
    p.add_argument("--surface", required=True)
    p.add_argument("--d", type=int, action="append", help="scan O_d instead of Z (repeatable)")
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("fiber")
    p.add_argument("action", choices=["classify", "conic", "orbit", "points", "parabolic-param"])
    p.add_argument("--surface", required=True)
    p.add_argument("--axis", default="x", choices=["x", "y", "z"])
    p.add_argument("--t", required=True)
    p.add_argument("--point", default=None)
    p.add_argument("--n", type=int, default=5)
    _common(p)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("curve")
    p.add_argument("action", choices=["classify", "solve"])
    p.add_argument("--surface", required=True)
    p.add_argument("--constraint", action="append")
    p.add_argument("--param", default=None, help="parametrization 'x(T);y(T);z(T)'")
    p.add_argument("--chart", choices=["canonical", "trace"], default=None)
    p.add_argument("--ring", default="Z", help="Z or a squarefree d for O_d")
    _common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("solve")
    p.add_argument("--surface", required=True)
    p.add_argument("--constraint", action="append")
    p.add_argument("--chart", choices=["canonical", "trace"], default=None)
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("slope")
    p.add_argument("action", choices=["trace", "poly"])
    p.add_argument("--slope", required=True)
    p.add_argument("--triple", default=None)
    _common(p)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("tree")
    p.add_argument("action", choices=["length"])
    p.add_argument("--p", required=True, help="prime, 'inf', or 'T=a'")
    p.add_argument("--matrix", required=True)
    _common(p)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("systole")
    p.add_argument("--place", required=True)
    p.add_argument("--triple", default=None)
    p.add_argument("--matrices", nargs=2, default=None)
    _common(p)
    p.set_defaults(func=cmd_systole)

    p = sub.add_parser("torus-lattice")
    p.add_argument("action", choices=["classify", "solve"])
    p.add_argument("--f", required=True)
    p.add_argument("--x", default=None)
    p.add_argument("--y", default=None)
    p.add_argument("--M", type=int, default=50)
    _common(p)
    p.set_defaults(func=cmd_torus_lattice)

    p = sub.add_parser("selftest")
    p.add_argument("--rounds", type=int, default=200)
    _common(p)
    p.set_defaults(func=cmd_selftest)
    return ap


def _config(args) -> dict:
    skip = {"func", "workers", "output"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _check_config(args):
    for name in ("H", "slope_bound", "depth"):
        if getattr(args, name, 1) < 1:
            raise InputError(f"--{name.replace('_', '-')} must be positive")
    if getattr(args, "M", 0) < 0:
        raise InputError("--M must be nonnegative")


def _emit(doc: dict, path) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False, default=str) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = None
    try:
        args = build_parser().parse_args(argv)
        _check_config(args)
        random.seed(args.seed)
        result = args.func(args)
    except BoundExceededError as exc:
        doc = {"error": {"kind": "bound-exceeded", "message": str(exc), "best": exc.best}}
        _emit(doc, getattr(args, "output", None))
        return EXIT_BOUND
    except (PreconditionError, ZeroDivisionError) as exc:
        doc = {"error": {"kind": "input" if isinstance(exc, InputError) else "precondition",
                         "message": str(exc)}}
        _emit(doc, getattr(args, "output", None))
        return EXIT_INPUT
    doc = {"command": args.command, "config": _config(args), "result": result}
    _emit(doc, args.output)
    if args.command == "selftest" and not result["passed"]:
        return EXIT_SELFTEST
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
