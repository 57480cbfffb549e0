"""Curves on Markoff-type surfaces and their integral points.

A curve is given either by a parametrization ``T -> (x(T), y(T), z(T))``
(polynomials or rational functions) or implicitly by extra polynomial
constraints.  A curve is *integrable* when some trace function (a slope
trace on the torus, a coordinate otherwise) is constant on it.

Solving strategies:

* integrable curves inside a coordinate fiber go through the fiber orbit
  machinery;
* polynomial families are solved exactly by reduction to residue classes;
* nonintegrable rational curves are solved by bounding a witness trace near
  every place at infinity and a coordinate on the compact remainder, which
  leaves finitely many candidate parameter values (certified);
* everything else is a box search (not certified).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy as sp

from .errors import BoundExceededError, PreconditionError
from .exactnum import INFINITY, AtInfinity, AtPoint, Poly, QuadElt, RatFunc, place_valuation, poly_xgcd
from .fibers import classify_fiber, fiber_integral_points, od_box_points
from .mpoly import MPoly
from .scan import box_points
from .slopes_trees import Slope, _ordered_traces
from .surface import (
    AXES,
    XYZ,
    MarkoffSurface,
    SurfacePoint,
    Torus,
    enumerate_minimal,
    evaluate_coeffs,
    moduli,
    ring_to_json,
    trace_chart,
    _torus_flip,
)

DEFAULT_SLOPE_BOUND = 8
SAMPLE_H = 30
COORD_SLOPES = {Slope(1, 0): "x", Slope(0, 1): "y", Slope(1, 1): "z"}


# -- curve types ----------------------------------------------------------------

@dataclass(frozen=True)
class Parametrized:
    coords: tuple  # Poly or RatFunc in T

    def to_json(self):
        return {"kind": "parametrized", "coords": [str(c) for c in self.coords]}


@dataclass(frozen=True)
class Implicit:
    constraints: tuple  # MPoly in x, y, z

    def to_json(self):
        return {"kind": "implicit", "constraints": [str(g) for g in self.constraints]}


@dataclass(frozen=True)
class CurveOnSurface:
    """A curve on ``surface``; coordinates are read in ``chart`` ("canonical" or "trace")."""
    surface: MarkoffSurface
    shape: Union[Parametrized, Implicit]
    chart: str = "canonical"

    def __post_init__(self):
        if self.chart not in ("canonical", "trace"):
            raise PreconditionError(f"unknown chart {self.chart!r}")
        coeffs = trace_chart(self.surface) if self.chart == "trace" else self.surface.coefficients
        if isinstance(self.shape, Parametrized):
            if len(self.shape.coords) != 3:
                raise PreconditionError("a parametrization needs three coordinates")
            res = evaluate_coeffs(coeffs, [_as_ratfunc(c) for c in self.shape.coords])
            if not res.is_zero():
                raise PreconditionError("parametrization does not lie on the surface")
        else:
            if not self.shape.constraints:
                raise PreconditionError("an implicit curve needs at least one constraint")
            F = _surface_mpoly(coeffs)
            for g in self.shape.constraints:
                if g.is_zero():
                    raise PreconditionError("zero constraint")
                if _is_multiple(g, F):
                    raise PreconditionError(f"constraint {g} is a multiple of the surface equation")

    @property
    def flips(self) -> bool:
        """Whether this chart differs from trace coordinates by ``x -> -x``."""
        return self.chart == "canonical" and _torus_flip(self.surface)

    def to_chart(self, p) -> SurfacePoint:
        """Trace coordinates to this curve's chart (an involution)."""
        return SurfacePoint(-p[0], p[1], p[2]) if self.flips else SurfacePoint(*p)

    def trace_shape(self):
        if not self.flips:
            return self.shape
        if isinstance(self.shape, Parametrized):
            x, y, z = self.shape.coords
            return Parametrized((-x, y, z))
        X = MPoly.var(XYZ, "x")
        return Implicit(tuple(g.substitute({"x": -X}) for g in self.shape.constraints))

    def to_json(self) -> dict:
        return {"surface": self.surface.to_json(), "chart": self.chart, **self.shape.to_json()}


def _as_ratfunc(c):
    return c if isinstance(c, RatFunc) else RatFunc(c)


def _surface_mpoly(coeffs) -> MPoly:
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    return evaluate_coeffs(coeffs, (x, y, z))


def _to_sympy(g: MPoly):
    syms = sp.symbols(" ".join(g.vars))
    expr = sp.Integer(0)
    for mono, c in g.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s ** e
        expr += term
    return expr, syms


def _is_multiple(g: MPoly, F: MPoly) -> bool:
    ge, syms = _to_sympy(g)
    fe, _ = _to_sympy(F)
    _, rem = sp.reduced(ge, [fe], *syms)
    return rem == 0


def parse_constraint(text: str) -> MPoly:
    g = MPoly.parse(text)
    if not g.is_integral():
        g = g * math.lcm(*(c.denominator for c in g.terms.values()))
    return g


def implicit_curve(s: MarkoffSurface, constraints: Sequence, chart: str = "canonical") -> CurveOnSurface:
    polys = tuple(parse_constraint(c) if isinstance(c, str) else c for c in constraints)
    return CurveOnSurface(s, Implicit(polys), chart)


def parametrized_curve(s: MarkoffSurface, coords: Sequence, chart: str = "trace") -> CurveOnSurface:
    return CurveOnSurface(s, Parametrized(tuple(coords)), chart)


# -- trace candidates -------------------------------------------------------------

def _uses_slopes(s: MarkoffSurface) -> bool:
    return isinstance(moduli(s), Torus)


def trace_candidates(s: MarkoffSurface, triple, slope_bound: int):
    """``(label, trace)`` pairs in search order for a triple in trace coordinates."""
    if _uses_slopes(s):
        yield from _ordered_traces(triple, slope_bound)
    else:
        for a in XYZ:
            yield a, triple[AXES[a]]


def _label(lbl) -> str:
    return str(lbl)


# -- classification ----------------------------------------------------------------

@dataclass
class Classification:
    status: str  # "integrable" | "nonintegrable" | "undetermined"
    label: object = None  # Slope or axis name
    value: object = None
    witnesses: list = field(default_factory=list)
    samples: int = 0
    slope_bound: int = 0

    @property
    def axis(self) -> Optional[str]:
        return None if self.label is None else (
            COORD_SLOPES.get(self.label) if isinstance(self.label, Slope) else self.label)

    def to_json(self) -> dict:
        out = {"status": self.status, "slope_bound": self.slope_bound}
        if self.status == "integrable":
            out["trace"] = _label(self.label)
            out["t"] = ring_to_json(self.value) if not isinstance(self.value, (Poly, RatFunc)) else str(self.value)
            if self.axis:
                out["axis"] = self.axis
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.samples:
            out["samples"] = self.samples
        return out


def classify_curve(c: CurveOnSurface, slope_bound: int = DEFAULT_SLOPE_BOUND,
                   sample_H: int = SAMPLE_H) -> Classification:
    s = c.surface
    shape = c.trace_shape()
    if isinstance(shape, Parametrized):
        triple = tuple(_as_ratfunc(v) for v in shape.coords)
        for lbl, tr in trace_candidates(s, triple, slope_bound):
            if tr.is_constant():
                return Classification("integrable", lbl, tr.constant_value(), slope_bound=slope_bound)
        return Classification("nonintegrable", witnesses=[f"no constant trace up to slope bound {slope_bound}"],
                              slope_bound=slope_bound)
    # a constraint "a*v + b" pins a coordinate outright
    for g in shape.constraints:
        used = g.variables_used()
        if len(used) == 1 and g.degree() == 1:
            (v,) = used
            coef = g.coefficient_of(v, 1).constant_term()
            lbl = next((sl for sl, a in COORD_SLOPES.items() if a == v), v) if _uses_slopes(s) else v
            return Classification("integrable", lbl, -g.constant_term() / coef, slope_bound=slope_bound)
    # implicit: sample integral points, then confirm constancy by radical membership
    pts = implicit_points(trace_chart(s), shape.constraints, sample_H)
    if len(pts) < 2:
        return Classification("undetermined", samples=len(pts), slope_bound=slope_bound)
    per_point = [dict(trace_candidates(s, p, slope_bound)) for p in pts]
    order = [lbl for lbl, _ in trace_candidates(s, pts[0], slope_bound)]
    witnesses = []
    for lbl in order:
        vals = [d[lbl] for d in per_point]
        if all(v == vals[0] for v in vals):
            if _constant_on_variety(trace_chart(s), shape.constraints, s, lbl, vals[0]):
                return Classification("integrable", lbl, vals[0], samples=len(pts), slope_bound=slope_bound)
            continue
        if len(witnesses) < 3:
            i = next(i for i, v in enumerate(vals) if v != vals[0])
            witnesses.append({"trace": _label(lbl), "points": [list(pts[0]), list(pts[i])],
                              "values": [vals[0], vals[i]]})
    return Classification("nonintegrable", witnesses=witnesses, samples=len(pts), slope_bound=slope_bound)


def _trace_mpoly(s, lbl) -> MPoly:
    from .slopes_trees import trace_polynomial
    if isinstance(lbl, Slope):
        return trace_polynomial(lbl)
    return MPoly.var(XYZ, lbl)


def _constant_on_variety(coeffs, constraints, s, lbl, value) -> bool:
    """Whether ``trace - value`` vanishes on the whole locus (Rabinowitsch test)."""
    w = sp.Symbol("w_aux")
    F, syms = _to_sympy(_surface_mpoly(coeffs))
    gens = [F] + [_to_sympy(g)[0] for g in constraints]
    tr, _ = _to_sympy(_trace_mpoly(s, lbl) - value)
    G = sp.groebner(gens + [1 - w * tr], *syms, w, order="grevlex")
    return G.exprs == [1]


# -- implicit box search -------------------------------------------------------------

def _linear_elimination(constraints):
    """A constraint ``c*v + R`` with constant ``c != 0`` and ``R`` free of ``v``."""
    best = None
    for g in constraints:
        for v in XYZ:
            if g.degree_in(v) != 1:
                continue
            lead = g.coefficient_of(v, 1)
            if not lead.is_constant():
                continue
            c = lead.constant_term()
            rest = g.coefficient_of(v, 0)
            cand = (len(rest.terms), v, c, rest, g)
            if best is None or cand[:2] < best[:2]:
                best = cand
    return None if best is None else best[1:]


def _univariate(mp: MPoly, var: str) -> list[Fraction]:
    i = mp.vars.index(var)
    deg = mp.degree_in(var)
    out = [Fraction(0)] * (max(deg, 0) + 1)
    for m, c in mp.terms.items():
        out[m[i]] += c
    return out


def _horner(cs, u):
    acc = 0
    for c in reversed(cs):
        acc = acc * u + c
    return acc


def _integer_roots(cs: list, H: int) -> Optional[list[int]]:
    """Integer roots in ``[-H, H]`` of ``sum cs[i] w^i``; ``None`` when identically zero."""
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    if not cs:
        return None
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        w = -cs[0] / cs[1]
        return [int(w)] if w.denominator == 1 and abs(w) <= H else []
    if deg == 2:
        a, b, c = cs[2], cs[1], cs[0]
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        num, den = disc.numerator, disc.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return []
        r = Fraction(rn, rd)
        out = set()
        for w in ((-b + r) / (2 * a), (-b - r) / (2 * a)):
            if w.denominator == 1 and abs(w) <= H:
                out.add(int(w))
        return sorted(out)
    # higher degree: exact integer roots via factorization over Q
    return [w for w in _int_roots_of_rational_poly(Poly(cs)) if abs(w) <= H]


def implicit_points(coeffs, constraints, H: int) -> list[SurfacePoint]:
    """Integral points with max-norm <= H on the surface and all constraints.

    When some constraint is linear in a variable with constant coefficient,
    that variable is eliminated and the search runs over one coordinate with
    exact root finding in the other; otherwise the full surface box is
    scanned.
    """
    F = _surface_mpoly(coeffs)
    elim = _linear_elimination(constraints)
    found = set()
    if elim is None:
        for p in box_points(*coeffs, H):
            if all(g(*p) == 0 for g in constraints):
                found.add(SurfacePoint(*p))
        return sorted(found)
    v, c, rest, _ = elim
    V = rest * Fraction(-1, 1) * (1 / c)
    P = F.substitute({v: V})
    others = [a for a in XYZ if a != v]
    # solve for the variable of lower positive degree, loop over the other
    degs = {a: P.degree_in(a) for a in others}
    if degs[others[0]] <= 0 and degs[others[1]] <= 0:
        loop, solve = others
    else:
        solve = min(others, key=lambda a: (degs[a] <= 0, degs[a]))
        loop = others[0] if solve == others[1] else others[1]
    coeff_polys = [_univariate(P.coefficient_of(solve, k), loop) for k in range(max(P.degree_in(solve), 0) + 1)]
    V_coeffs = {(m[XYZ.index(loop)], m[XYZ.index(solve)]): cf for m, cf in V.terms.items()}
    for u in range(-H, H + 1):
        cs = [_horner(cp, u) for cp in coeff_polys]
        roots = _integer_roots(cs, H)
        ws = range(-H, H + 1) if roots is None else roots
        for w in ws:
            val = sum(cf * u ** i * w ** j for (i, j), cf in V_coeffs.items())
            if val.denominator != 1 or abs(val) > H:
                continue
            q = {loop: u, solve: w, v: int(val)}
            p = SurfacePoint(q["x"], q["y"], q["z"])
            if evaluate_coeffs(coeffs, p) == 0 and all(g(*p) == 0 for g in constraints):
                found.add(p)
    return sorted(found)


# -- solution sets ---------------------------------------------------------------------

@dataclass
class SolutionSet:
    finite_points: list = field(default_factory=list)  # trace coordinates
    orbit_generators: list = field(default_factory=list)
    families: list = field(default_factory=list)
    certified: bool = False
    search_bound: Optional[int] = None
    method: str = ""
    classification: Optional[Classification] = None
    bounds: dict = field(default_factory=dict)
    curve: Optional[CurveOnSurface] = None

    def points_in_chart(self) -> list[SurfacePoint]:
        if self.curve is None:
            return list(self.finite_points)
        return sorted(self.curve.to_chart(p) for p in self.finite_points)

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "certified": self.certified,
            "search_bound": self.search_bound,
            "classification": self.classification.to_json() if self.classification else None,
            "points": [_pt_json(p) for p in self.points_in_chart()],
            "orbit_generators": self.orbit_generators,
            "families": self.families,
            "bounds": self.bounds,
        }
        if self.curve is not None:
            out["chart"] = self.curve.chart
            if self.curve.flips:
                out["trace_points"] = [_pt_json(p) for p in self.finite_points]
                out["involution"] = "trace coordinates are (-x, y, z)"
        return out


def _pt_json(p):
    return [ring_to_json(v) for v in p]


# -- polynomial families -------------------------------------------------------------------

def _split_quadratic(p: Poly):
    """``p = R + S*sqrt(D)`` with rational ``R, S``; returns ``(R, S, D)``."""
    D = None
    rs, ss = [], []
    for c in p.coeffs:
        if isinstance(c, QuadElt) and c.s != 0:
            if D is not None and c.D != D:
                raise PreconditionError("coefficients from different quadratic fields")
            D = c.D
            rs.append(c.r)
            ss.append(c.s)
        else:
            rs.append(c.r if isinstance(c, QuadElt) else Fraction(c))
            ss.append(Fraction(0))
    return Poly(rs), Poly(ss), D


def _int_roots_of_rational_poly(p: Poly) -> list[int]:
    T = sp.Symbol("T")
    expr = sum(sp.Rational(c.numerator, c.denominator) * T ** i for i, c in enumerate(p.coeffs))
    out = []
    for fac, _ in sp.factor_list(expr, T)[1]:
        P = sp.Poly(fac, T)
        if P.degree() == 1:
            a, b = P.all_coeffs()
            r = sp.Rational(-b, a)
            if r.q == 1:
                out.append(int(r))
    return sorted(out)


def _poly_str(p: Poly, var: str) -> str:
    return str(p).replace("T", var)


def _family_solutions(coords, H: int, max_modulus: int = 10**6):
    """Integral points of a polynomial family ``T -> coords`` (trace coordinates).

    Returns ``(points_in_box, families, certified)``.
    """
    polys = [c if isinstance(c, Poly) else c.num for c in coords]
    linear = [i for i, p in enumerate(polys) if p.degree == 1]
    if not linear:
        return _family_fallback(polys, H)
    i = linear[0]
    a, b = polys[i].coeff(1), polys[i].coeff(0)
    # the linear coordinate takes an integer value n, so T = (n - b)/a
    sub = Poly([-b / a, 1 / a])
    Q = [p(sub) for p in polys]
    parts = [_split_quadratic(q) for q in Q]
    irr = [S for _, S, D in parts if D is not None and not S.is_zero()]
    if irr:
        cands = None
        for S in irr:
            roots = set(_int_roots_of_rational_poly(S))
            cands = roots if cands is None else cands & roots
        pts = []
        for n in sorted(cands or ()):
            p = tuple(q(Fraction(n)) for q in Q)
            if all(_is_int(v) for v in p):
                pts.append(SurfacePoint(*(int(_rat(v)) for v in p)))
        return [p for p in pts if max(map(abs, p)) <= H], [], True
    R = [r for r, _, _ in parts]
    M = math.lcm(*(c.denominator for r in R for c in r.coeffs)) if any(r.coeffs for r in R) else 1
    if M > max_modulus:
        raise BoundExceededError(f"residue modulus {M} exceeds {max_modulus}")
    # every integer m gives a point, so the answer is the families themselves;
    # points inside the box are only counted
    families = []
    m = Poly.T()
    for r0 in range(M):
        if not all(_rat(q(Fraction(r0))).denominator == 1 for q in R):
            continue
        shifted = [q(m * M + r0) for q in R]
        in_box = sum(1 for n in range(-H + (r0 + H) % M, H + 1, M)
                     if max(abs(q(Fraction(n))) for q in R) <= H)
        families.append({"parameter": "m", "T": _poly_str(sub(m * M + r0), "m"),
                         "coords": [_poly_str(q, "m") for q in shifted], "points_in_box": in_box})
    return [], families, True


def _rat(v):
    if isinstance(v, QuadElt):
        return v.r if v.s == 0 else None
    return Fraction(v)


def _is_int(v) -> bool:
    r = _rat(v)
    return r is not None and r.denominator == 1


def _family_fallback(polys, H):
    """No linear coordinate: rational parameter values only (not certified)."""
    nonconst = [p for p in polys if not p.is_constant()]
    if not nonconst:
        p = tuple(q.constant_value() for q in polys)
        ok = all(_is_int(v) for v in p)
        return ([SurfacePoint(*(int(_rat(v)) for v in p))] if ok else []), [], True
    base = min(nonconst, key=lambda p: p.degree)
    R, S, D = _split_quadratic(base)
    if D is not None:
        raise PreconditionError("family without a linear coordinate over a quadratic field")
    pts = set()
    T = sp.Symbol("T")
    for n in range(-H, H + 1):
        expr = sum(sp.Rational(c.numerator, c.denominator) * T ** i for i, c in enumerate((R - n).coeffs))
        for fac, _ in sp.factor_list(expr, T)[1]:
            P = sp.Poly(fac, T)
            if P.degree() != 1:
                continue
            a, b = P.all_coeffs()
            t = Fraction(int(-b), int(a))
            p = tuple(q(t) for q in polys)
            if all(_is_int(v) for v in p) and max(abs(_rat(v)) for v in p) <= H:
                pts.add(SurfacePoint(*(int(_rat(v)) for v in p)))
    return sorted(pts), [], False


# -- valuation witnesses and the certified solver --------------------------------------------

@dataclass(frozen=True)
class PlaceWitness:
    place: object
    label: object
    trace: RatFunc
    valuation: int
    value: Fraction

    def to_json(self) -> dict:
        return {"place": str(self.place), "trace": _label(self.label), "valuation": self.valuation,
                "value": str(self.value), "function": str(self.trace)}


def _rational_poles(coords) -> tuple[list[Fraction], bool]:
    """Rational poles of the coordinates, and whether every pole is rational."""
    T = sp.Symbol("T")
    poles = set()
    all_rational = True
    for c in coords:
        den = _as_ratfunc(c).den
        if den.degree <= 0:
            continue
        if any(isinstance(v, QuadElt) for v in den.coeffs):
            return sorted(poles), False
        expr = sum(sp.Rational(v.numerator, v.denominator) * T ** i for i, v in enumerate(den.coeffs))
        for fac, _ in sp.factor_list(expr, T)[1]:
            P = sp.Poly(fac, T)
            if P.degree() == 1:
                a, b = P.all_coeffs()
                poles.add(_frac(-b / a))
            else:
                all_rational = False
    return sorted(poles), all_rational


def _frac(r) -> Fraction:
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


def _places_at_infinity(coords):
    poles, ok = _rational_poles(coords)
    places = [AtPoint(a) for a in poles]
    if any(place_valuation(_as_ratfunc(c), INFINITY) < 0 for c in coords if not _as_ratfunc(c).is_zero()):
        places.append(INFINITY)
    return places, ok


def _value_at(f: RatFunc, place, v: int):
    if v > 0:
        return Fraction(0)
    if isinstance(place, AtInfinity):
        return f.num.lead / f.den.lead
    return f(place.alpha)


def _witness_at(s, triple, place, slope_bound, need_nonconstant=True) -> PlaceWitness:
    best = None
    for lbl, tr in trace_candidates(s, triple, slope_bound):
        tr = _as_ratfunc(tr)
        if tr.is_zero():
            v = math.inf
        else:
            v = place_valuation(tr, place)
        if v >= 0 and not (need_nonconstant and tr.is_constant()):
            return PlaceWitness(place, lbl, tr, v if v != math.inf else 0, _value_at(tr, place, v) if v != math.inf else Fraction(0))
        if best is None or v > best[0]:
            best = (v, lbl)
    raise BoundExceededError(
        f"witness bound exceeded at {place}: no trace within slope bound {slope_bound} is bounded there",
        best={"place": str(place), "valuation": best[0] if best else None,
              "trace": _label(best[1]) if best else None},
    )


def infinity_witnesses(c: CurveOnSurface, slope_bound: int = DEFAULT_SLOPE_BOUND) -> list[PlaceWitness]:
    """For each place where the parametrized curve escapes to infinity, a bounded trace."""
    shape = c.trace_shape()
    if not isinstance(shape, Parametrized):
        raise PreconditionError("infinity witnesses need a parametrized curve")
    triple = tuple(_as_ratfunc(v) for v in shape.coords)
    places, _ = _places_at_infinity(triple)
    out = []
    for P in places:
        w = _witness_at(c.surface, triple, P, slope_bound, need_nonconstant=False)
        assert w.trace.is_zero() or place_valuation(w.trace, P) >= 0
        out.append(w)
    return out


def _abs_coeffs(p: Poly) -> list[float]:
    return [abs(float(c)) for c in p.coeffs]


def _disc_bound(f: RatFunc, place, r: float) -> Optional[float]:
    """Bound for ``|f|`` on the punctured disc of radius ``r`` around ``place``.

    In a local coordinate ``s`` the function is ``s^k * N(s)/D(s)`` with
    ``k >= 0`` and ``D(0) != 0``; when ``sum_{j>=1} |D_j| r^j <= |D_0|/2`` we get
    ``|f| <= 2 * sum |N_j| r^j / |D_0|``.
    """
    if isinstance(place, AtInfinity):
        m = max(f.num.degree, f.den.degree)
        N, D = f.num.reversed_to(m), f.den.reversed_to(m)
    else:
        N, D = f.num.taylor_shift(place.alpha), f.den.taylor_shift(place.alpha)
    d = _abs_coeffs(D)
    if d[0] == 0:
        return None
    if sum(dj * r ** j for j, dj in enumerate(d) if j) > d[0] / 2:
        return None
    return 2 * sum(nj * r ** j for j, nj in enumerate(_abs_coeffs(N))) / d[0]


def _reduce_mod(f: RatFunc, g: Poly) -> Optional[Poly]:
    """``f`` as an element of ``Q[T]/(g)``; ``None`` when ``g`` meets a pole."""
    G, s, _ = poly_xgcd(f.den, g)
    if G.degree != 0:
        return None
    return (f.num * s) % g


def _candidate_points(coords, cand: Poly):
    """Integral points at the roots of ``cand``, grouped by irreducible factor."""
    T = sp.Symbol("T")
    expr = sum(sp.Rational(c.numerator, c.denominator) * T ** i for i, c in enumerate(cand.coeffs))
    out = set()
    for fac, _ in sp.factor_list(expr, T)[1]:
        P = sp.Poly(fac, T)
        g = Poly([_frac(v) for v in reversed(P.all_coeffs())])
        vals = []
        for c in coords:
            r = _reduce_mod(c, g)
            if r is None or not r.is_constant() or r.constant_value().denominator != 1:
                break
            vals.append(int(r.constant_value()))
        else:
            out.add(SurfacePoint(*vals))
    return out


def solve_nonintegrable(c: CurveOnSurface, slope_bound: int = DEFAULT_SLOPE_BOUND) -> SolutionSet:
    """Certified integral points of a nonintegrable rational curve.

    Near each place at infinity a witness trace is bounded, so at integral
    points it takes one of finitely many integer values; away from those
    places one coordinate is bounded.  Every candidate parameter is a root of
    an explicit polynomial and is checked exactly in ``Q[T]/(factor)``.
    """
    s = c.surface
    shape = c.trace_shape()
    if not isinstance(shape, Parametrized):
        raise PreconditionError("the certified solver needs a parametrized curve")
    triple = tuple(_as_ratfunc(v) for v in shape.coords)
    for f in triple:
        if any(isinstance(v, QuadElt) for v in f.num.coeffs + f.den.coeffs):
            raise PreconditionError("certified solving needs rational coefficients")
    places, ok = _places_at_infinity(triple)
    if not ok:
        raise PreconditionError("certified solving needs rational poles")
    poles = [P.alpha for P in places if isinstance(P, AtPoint)]
    bounds = {}
    candidates: list[Poly] = []
    radii = {}
    for P in places:
        w = _witness_at(s, triple, P, slope_bound)
        if isinstance(P, AtPoint):
            others = [abs(float(P.alpha - q)) for q in poles if q != P.alpha]
            r = min([0.5] + [d / 2 for d in others])
        else:
            r = 1 / max([2.0] + [2 * abs(float(q)) + 1 for q in poles])
        B = _disc_bound(w.trace, P, r)
        while B is None:
            r /= 2
            B = _disc_bound(w.trace, P, r)
        radii[P] = r
        amax = 2 * math.floor(B)  # doubled for safety
        for a in range(-amax, amax + 1):
            cand = w.trace.num - w.trace.den * a
            if cand.is_zero():
                raise AssertionError("witness trace is constant")
            candidates.append(cand)
        bounds[str(P)] = {"trace": _label(w.label), "radius": r, "trace_bound": B, "values": amax}
    # compact remainder: |T| <= R and |T - alpha| >= r_alpha
    R = 1 / radii[INFINITY] if INFINITY in radii else None
    best = None
    for i, f in enumerate(triple):
        if f.is_constant():
            continue
        if R is None:
            Xb = _disc_bound(f, INFINITY, 0.5)
            if Xb is None:
                continue
            Rr = 2.0
        else:
            Rr = R
        num = sum(a * Rr ** j for j, a in enumerate(_abs_coeffs(f.num)))
        low = abs(float(f.den.lead))
        for a in poles:
            k = f.den.order_at(a)
            low *= radii[AtPoint(a)] ** k
        X = num / low
        if R is None:
            X = max(X, Xb)
        if best is None or X < best[0]:
            best = (X, i, f)
    if best is None:
        raise PreconditionError("curve is a point")
    X, i, f = best
    n_max = math.floor(X)
    for n in range(-n_max, n_max + 1):
        candidates.append(f.num - f.den * n)
    bounds["compact"] = {"coordinate": XYZ[i], "coordinate_bound": X, "R": R}
    pts = set()
    for cand in candidates:
        pts |= _candidate_points(triple, cand)
    if INFINITY not in places:
        limit = tuple(_value_at(g, INFINITY, place_valuation(g, INFINITY)) if not g.is_zero() else Fraction(0)
                      for g in triple)
        if all(v.denominator == 1 for v in limit):
            pts.add(SurfacePoint(*(int(v) for v in limit)))
    coeffs = trace_chart(s)
    pts = {p for p in pts if evaluate_coeffs(coeffs, p) == 0}
    return SolutionSet(sorted(pts), certified=True, method="valuation-at-infinity",
                       bounds=bounds, curve=c)


# -- top-level solving -------------------------------------------------------------

def _fiber_solution(c: CurveOnSurface, cls: Classification, H: int, constraints) -> SolutionSet:
    s = c.surface
    axis = cls.axis
    t = cls.value
    t = Fraction(t) if not isinstance(t, QuadElt) else t
    if not (isinstance(t, Fraction) and t.denominator == 1):
        return SolutionSet([], certified=True, search_bound=H, method="fiber", classification=cls, curve=c,
                           bounds={"note": "non-integral fiber value"})
    t = int(t)
    rep = fiber_integral_points(s, axis, t, H)
    full = constraints is None or all(_vanishes_on_fiber(g, axis, t) for g in constraints)
    pts = [p for p in rep.points if constraints is None or all(g(*p) == 0 for g in constraints)]
    out = SolutionSet(pts, search_bound=H, method="fiber", classification=cls, curve=c)
    out.bounds = {"fiber": rep.descriptor.to_json(), "fundamental_bound": rep.bound}
    if full and not rep.descriptor.parabolic and abs(t) > 2:
        gen = "half-twist (u,v)->(v,t*v-u)" if isinstance(moduli(s), Torus) else "m_v . m_u"
        out.orbit_generators = [
            {"rep": _pt_json(c.to_chart(r)), "trace_rep": _pt_json(r), "period": per,
             "axis": axis, "t": t, "generator": gen}
            for r, per in rep.orbits
        ]
        out.certified = rep.certified
    elif full and abs(t) < 2:
        # bounded conic: the box list is complete once H covers the ellipse
        out.certified = rep.certified
    return out


def _vanishes_on_fiber(g: MPoly, axis: str, t: int) -> bool:
    return g.substitute({axis: MPoly.const(XYZ, t)}).is_zero()


def solve_curve_integral(c: CurveOnSurface, ring="Z", H: int = 100,
                         slope_bound: int = DEFAULT_SLOPE_BOUND,
                         classification: Optional[Classification] = None) -> SolutionSet:
    """Integral points of a curve over ``Z`` (``ring="Z"``) or ``O_d`` (``ring=d``)."""
    if H < 1:
        raise PreconditionError("H must be at least 1")
    s = c.surface
    shape = c.trace_shape()
    if ring != "Z":
        return _od_solution(c, int(ring), H)
    cls = classification or classify_curve(c, slope_bound)
    if isinstance(shape, Parametrized):
        coords = tuple(_as_ratfunc(v) for v in shape.coords)
        if all(f.den.degree == 0 for f in coords):
            pts, fams, cert = _family_solutions([f.num * (1 / f.den.lead) for f in coords], H)
            return SolutionSet(pts, families=fams, certified=cert, search_bound=H,
                               method="polynomial-family", classification=cls, curve=c)
        if cls.status == "integrable" and cls.axis:
            desc = classify_fiber(s, cls.axis, cls.value)
            if not desc.parabolic:
                # a nonconstant rational curve in a smooth conic is the whole conic
                return _fiber_solution(c, cls, H, None)
        if cls.status == "nonintegrable":
            out = solve_nonintegrable(c, slope_bound)
            out.classification = cls
            out.search_bound = None
            return out
        raise PreconditionError("no solver for this parametrized curve")
    if cls.status == "undetermined":
        raise PreconditionError("classification undetermined: too few sample points")
    constraints = shape.constraints
    if cls.status == "integrable" and cls.axis:
        return _fiber_solution(c, cls, H, constraints)
    pts = implicit_points(trace_chart(s), constraints, H)
    return SolutionSet(pts, certified=False, search_bound=H, method="box-search",
                       classification=cls, curve=c)


def _od_solution(c: CurveOnSurface, d: int, H: int) -> SolutionSet:
    shape = c.trace_shape()
    if not isinstance(shape, Implicit):
        raise PreconditionError("O_d solving needs an implicit curve")
    pts = []
    for p in od_box_points(trace_chart(c.surface), d, H):
        qs = [v.to_quad() for v in p]
        if all(_quad_zero(g(*qs)) for g in shape.constraints):
            pts.append(p)
    return SolutionSet(pts, certified=False, search_bound=H, method=f"O_{d}-box-search", curve=c)


def _quad_zero(v) -> bool:
    return v == 0


def corollary5_solve(s: MarkoffSurface, constraints: Sequence, H: int,
                     chart: str = "canonical", slope_bound: int = DEFAULT_SLOPE_BOUND) -> SolutionSet:
    """Integral points of the surface cut by polynomial constraints.

    With no constraints this is the minimal-point enumeration; otherwise the
    constraints define a curve that is classified and solved.  If too few
    sample points exist to classify, the result is a box search.
    """
    if not constraints:
        minimal = enumerate_minimal(s, H)
        out = SolutionSet(method="descent", search_bound=H)
        out.finite_points = minimal
        out.orbit_generators = [{"rep": _pt_json(p), "generator": "Vieta moves and symmetries"}
                                for p in minimal]
        return out
    c = implicit_curve(s, constraints, chart)
    cls = classify_curve(c, slope_bound)
    if cls.status == "undetermined":
        pts = implicit_points(trace_chart(s), c.trace_shape().constraints, H)
        return SolutionSet(pts, certified=False, search_bound=H, method="box-search",
                           classification=cls, curve=c)
    return solve_curve_integral(c, "Z", H, slope_bound, classification=cls)
