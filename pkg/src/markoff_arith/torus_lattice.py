"""Points ``(x^m, y^n)`` on a plane curve ``f(X, Y) = 0`` in the 2-torus.

For rationals ``x, y`` the exponent set ``S = {(m, n) >= 0 : f(x^m, y^n) = 0}``
is either finite, or the curve is a translate of a one-dimensional subtorus
invariant under ``(x^(b*e), y^(a*d))`` and ``S`` contains an arithmetic
progression.  Here the second case is recognised exactly (binomial curves
plus multiplicative dependence); the first is reported with the scan bound,
without an effective height bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy as sp

from .errors import PreconditionError
from .exactnum import factor_int, format_rational
from .mpoly import MPoly

XY = ("X", "Y")


def parse_xy(text: str) -> MPoly:
    return MPoly.parse(text, XY)


def poly_to_json(f: MPoly) -> list[dict]:
    return [{"cx": format_rational(c), "dx": m[0], "dy": m[1]} for m, c in sorted(f.terms.items())]


def poly_from_json(obj: list[dict]) -> MPoly:
    terms = {}
    for t in obj:
        key = (int(t["dx"]), int(t["dy"]))
        terms[key] = terms.get(key, 0) + Fraction(t["cx"])
    return MPoly(XY, terms)


@dataclass(frozen=True)
class LatticePointProblem:
    f: MPoly
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if self.f.vars != XY:
            raise PreconditionError("f must be a polynomial in X, Y")
        if self.f.is_zero():
            raise PreconditionError("f must be nonzero")
        for i, name in enumerate(XY):
            if all(m[i] > 0 for m in self.f.terms):
                raise PreconditionError(f"f is divisible by {name}")
        for v in (self.x, self.y):
            if v == 0 or abs(v) == 1:
                raise PreconditionError("x and y must be nonzero with absolute value != 1")

    @classmethod
    def make(cls, f, x, y) -> "LatticePointProblem":
        return cls(parse_xy(f) if isinstance(f, str) else f, Fraction(x), Fraction(y))


# -- multiplicative dependence --------------------------------------------------

def _exponents(r: Fraction) -> dict[int, int]:
    out = dict(factor_int(abs(r.numerator)))
    for p, e in factor_int(r.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}


def multiplicative_dependence(x, y) -> Optional[tuple[Fraction, int, int]]:
    """``(v, a, b)`` with ``|x| = v^a``, ``|y| = v^b``, ``gcd(a, b) = 1``, or ``None``."""
    x, y = Fraction(x), Fraction(y)
    if abs(x) <= 1 or abs(y) <= 1:
        raise PreconditionError("need |x| > 1 and |y| > 1")
    ex, ey = _exponents(x), _exponents(y)
    ga, gb = math.gcd(*ex.values()), math.gcd(*ey.values())
    dx = {p: e // ga for p, e in ex.items()}
    dy = {p: e // gb for p, e in ey.items()}
    if dx != dy:
        return None
    v = Fraction(1)
    for p, e in dx.items():
        v *= Fraction(p) ** e
    return v, ga, gb


# -- binomial curves -----------------------------------------------------------

def _sympy_xy(f: MPoly):
    X, Y = sp.symbols("X Y")
    expr = sum(sp.Rational(c.numerator, c.denominator) * X ** m[0] * Y ** m[1] for m, c in f.terms.items())
    return expr, X, Y


def irreducible_factors(f: MPoly) -> list[tuple[str, int]]:
    """Irreducible factors over Q with multiplicities."""
    expr, X, Y = _sympy_xy(f)
    _, facs = sp.factor_list(expr, X, Y)
    return [(str(g), k) for g, k in facs]


@dataclass(frozen=True)
class SubtorusData:
    d: int
    e: int
    beta: Fraction  # curve is X^d = beta * Y^e in the torus
    base: tuple[Fraction, Fraction]

    def parametrize(self, T):
        u0, v0 = self.base
        return (u0 * T ** self.e, v0 * T ** self.d)

    def to_json(self) -> dict:
        return {"d": self.d, "e": self.e, "beta": format_rational(self.beta),
                "base": [format_rational(v) for v in self.base],
                "parametrization": f"({format_rational(self.base[0])}*T^{self.e}, "
                                   f"{format_rational(self.base[1])}*T^{self.d})"}


def is_subtorus_translate(f: MPoly) -> Optional[SubtorusData]:
    """Recognise ``c1*X^l1*Y^m1 + c2*X^l2*Y^m2`` with exponent difference ``(d, -e)``, ``d, e > 0`` coprime.

    In the torus the zero set is then ``X^d = beta*Y^e``, parametrized by
    ``(u0*T^e, v0*T^d)`` with ``u0 = beta^s``, ``v0 = beta^r`` and ``d*s - e*r = 1``.
    """
    facs = irreducible_factors(f)
    if len(facs) > 1 or (facs and facs[0][1] > 1):
        shown = " * ".join(f"({g})" + (f"^{k}" if k > 1 else "") for g, k in facs)
        raise PreconditionError(f"f is reducible: {shown}")
    if len(f.terms) != 2:
        return None
    (m1, c1), (m2, c2) = sorted(f.terms.items())
    dx, dy = m1[0] - m2[0], m1[1] - m2[1]
    if dx < 0:
        (m1, c1), (m2, c2), dx, dy = (m2, c2), (m1, c1), -dx, -dy
    if dx <= 0 or dy >= 0:
        return None
    d, e = dx, -dy
    if math.gcd(d, e) != 1:
        return None
    beta = -c2 / c1
    # d*s - e*r = 1
    g, s, t = _ext_gcd(d, e)
    r = -t
    u0, v0 = beta ** s, beta ** r
    return SubtorusData(d, e, beta, (u0, v0))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


# -- exponent scans --------------------------------------------------------------

def exponential_solutions(prob: LatticePointProblem, M: int) -> list[tuple[int, int]]:
    """All ``(m, n)`` in ``[0, M]^2`` with ``f(x^m, y^n) = 0``, exactly."""
    if M < 0:
        raise PreconditionError("M must be nonnegative")
    xs = [prob.x ** m for m in range(M + 1)]
    ys = [prob.y ** n for n in range(M + 1)]
    terms = list(prob.f.terms.items())
    out = []
    for m in range(M + 1):
        xp = {k: xs[m] ** k for k in {mono[0] for mono, _ in terms}}
        for n in range(M + 1):
            if sum(c * xp[a] * ys[n] ** b for (a, b), c in terms) == 0:
                out.append((m, n))
    return out


@dataclass
class DichotomyResult:
    tag: str  # "finite" | "subtorus-translate"
    bound: int
    solutions: list
    subtorus: Optional[SubtorusData] = None
    dependence: Optional[tuple] = None
    invariant_element: Optional[tuple[Fraction, Fraction]] = None
    step: Optional[tuple[int, int]] = None

    def to_json(self) -> dict:
        out = {"tag": self.tag, "bound": self.bound, "solutions": [list(s) for s in self.solutions]}
        if self.tag == "finite":
            out["completeness"] = "complete within the bound only"
        else:
            out["subtorus"] = self.subtorus.to_json()
            v, a, b = self.dependence
            out["dependence"] = {"v": format_rational(v), "a": a, "b": b}
            out["invariant_element"] = [format_rational(c) for c in self.invariant_element]
            out["step"] = list(self.step)
        return out


def preserves_curve(f: MPoly, z: tuple[Fraction, Fraction]) -> bool:
    """Whether ``(X, Y) -> (z0*X, z1*Y)`` maps ``f = 0`` to itself (``f`` scales by a constant)."""
    X, Y = MPoly.var(XY, "X"), MPoly.var(XY, "Y")
    g = f(z[0] * X, z[1] * Y)
    ratios = {m: g.terms.get(m, Fraction(0)) / c for m, c in f.terms.items()}
    return set(g.terms) == set(f.terms) and len(set(ratios.values())) == 1


def _normalized(v: Fraction) -> Fraction:
    return abs(v) if abs(v) > 1 else 1 / abs(v)


def classify_dichotomy(prob: LatticePointProblem, M: int) -> DichotomyResult:
    sols = exponential_solutions(prob, M)
    try:
        sub = is_subtorus_translate(prob.f)
    except PreconditionError:
        sub = None
    if sub is not None and sols and (abs(prob.x) > 1) == (abs(prob.y) > 1):
        dep = multiplicative_dependence(_normalized(prob.x), _normalized(prob.y))
        if dep is not None:
            _, a, b = dep
            step = (b * sub.e, a * sub.d)
            z = (prob.x ** step[0], prob.y ** step[1])
            if preserves_curve(prob.f, z):
                return DichotomyResult("subtorus-translate", M, sols, sub, dep, z, step)
    return DichotomyResult("finite", M, sols)
