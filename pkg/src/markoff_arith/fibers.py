"""Fibers of a trace coordinate on the torus and sphere surfaces.

All points handled here are in trace coordinates (see ``surface.to_trace``).
Fixing one coordinate ``axis = t`` cuts out a conic in the two remaining
("free") coordinates.  The conic is either

* perfect: ``t != +-2`` and the conic is smooth, so its integral points fall
  into finitely many orbits of the fiber generator, or
* parabolic: ``t = +-2`` or the conic splits into two lines, so it is covered
  by a polynomial family ``T -> (t, u(T), v(T))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .errors import PreconditionError
from .exactnum import Poly, QuadElt, QuadInt, _is_squarefree, format_rational, solve_lambda
from .scan import fixed_coordinate_points
from .surface import (
    AXES,
    MarkoffSurface,
    Sphere,
    SurfacePoint,
    Torus,
    check_common_ring,
    class_key,
    evaluate_coeffs,
    moduli,
    move_coeffs,
    norm,
    ring_to_json,
    symmetries,
    to_trace,
    trace_chart,
)

FREE = {"x": ("y", "z"), "y": ("x", "z"), "z": ("x", "y")}

# boundary pairs glued by each coordinate curve on the four-holed sphere
SPHERE_PAIRS = {"x": ((0, 1), (2, 3)), "y": ((1, 2), (0, 3)), "z": ((0, 2), (1, 3))}


def _axis(axis: str) -> str:
    if axis not in AXES:
        raise PreconditionError(f"unknown axis {axis!r}")
    return axis


def is_reducible_triple(k1, k2, k3) -> bool:
    """Whether ``k1^2+k2^2+k3^2-k1*k2*k3-4`` vanishes (works for polynomial inputs)."""
    v = k1 * k1 + k2 * k2 + k3 * k3 - k1 * k2 * k3 - 4
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


# -- conics -------------------------------------------------------------------

@dataclass(frozen=True)
class Conic:
    """``uu*u^2 + uv*u*v + vv*v^2 + lu*u + lv*v + const = 0`` in free variables (u, v)."""
    names: tuple[str, str]
    uu: Fraction
    uv: Fraction
    vv: Fraction
    lu: Fraction
    lv: Fraction
    const: Fraction

    @property
    def coefficients(self) -> tuple:
        return (self.uu, self.uv, self.vv, self.lu, self.lv, self.const)

    def __call__(self, u, v):
        return (self.uu * u * u + self.uv * u * v + self.vv * v * v
                + self.lu * u + self.lv * v + self.const)

    def determinant(self) -> Fraction:
        """Determinant of the symmetric 3x3 matrix of the conic."""
        a, b, c = self.uu, self.uv / 2, self.vv
        d, e, f = self.lu / 2, self.lv / 2, self.const
        return a * (c * f - e * e) - b * (b * f - e * d) + d * (b * e - c * d)

    def center(self) -> tuple[Fraction, Fraction] | None:
        det = 4 * self.uu * self.vv - self.uv * self.uv
        if det == 0:
            return None
        u = (self.uv * self.lv - 2 * self.vv * self.lu) / det
        v = (self.uv * self.lu - 2 * self.uu * self.lv) / det
        return u, v

    def __str__(self):
        u, v = self.names
        terms = [(self.uu, f"{u}^2"), (self.uv, f"{u}*{v}"), (self.vv, f"{v}^2"),
                 (self.lu, u), (self.lv, v), (self.const, "")]
        out = []
        for c, m in terms:
            if c == 0:
                continue
            if m and abs(c) == 1:
                body = m
            else:
                body = format_rational(abs(c)) + ("*" + m if m else "")
            out.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(out) or "0"
        return (text[2:] if text.startswith("+ ") else "-" + text[2:]) + " = 0"

    def to_json(self) -> dict:
        return {"vars": list(self.names),
                "coeffs": [format_rational(c) for c in self.coefficients],
                "text": str(self)}


def fiber_conic(s: MarkoffSurface, axis: str, t) -> Conic:
    """Substitute ``axis = t`` into the cubic, in trace coordinates."""
    eps, a, b, c, d = trace_chart(s)
    t = Fraction(t)
    lin = {"x": a, "y": b, "z": c}
    u, v = FREE[_axis(axis)]
    return Conic((u, v), Fraction(1), eps * t, Fraction(1),
                 Fraction(-lin[u]), Fraction(-lin[v]), t * t - lin[axis] * t - d)


# -- classification ---------------------------------------------------------

@dataclass(frozen=True)
class FiberDescriptor:
    surface: MarkoffSurface
    axis: str
    t: Fraction
    classification: str  # "perfect" | "parabolic"
    reason: Optional[str]  # "t=+-2" | "reducible-factor" | None
    conic: Conic
    lam: object = None

    @property
    def parabolic(self) -> bool:
        return self.classification == "parabolic"

    def to_json(self) -> dict:
        out = {"axis": self.axis, "t": format_rational(self.t), "class": self.classification,
               "reason": self.reason, "conic": self.conic.to_json()}
        if self.lam is not None:
            out["lambda"] = ring_to_json(self.lam)
        return out


def classify_fiber(s: MarkoffSurface, axis: str, t) -> FiberDescriptor:
    axis = _axis(axis)
    t = Fraction(t)
    prov = moduli(s)
    if isinstance(prov, Torus):
        if t * t == 4:
            reason = "t=+-2"
        elif prov.k != 2 and t * t - 2 - prov.k == 0:
            reason = "reducible-factor"
        else:
            reason = None
    elif isinstance(prov, Sphere):
        ks = prov.ks
        if t * t == 4:
            reason = "t=+-2"
        elif any(t * t + ks[i] ** 2 + ks[j] ** 2 - t * ks[i] * ks[j] - 4 == 0
                 for i, j in SPHERE_PAIRS[axis]):
            reason = "reducible-factor"
        else:
            reason = None
    else:
        raise PreconditionError("no moduli interpretation")
    cls = "parabolic" if reason else "perfect"
    lam = solve_lambda(t) if t * t != 4 else None
    return FiberDescriptor(s, axis, t, cls, reason, fiber_conic(s, axis, t), lam)


def degenerate_constant(s: MarkoffSurface, axis: str, t) -> Fraction:
    """The quantity whose vanishing makes the fiber conic singular.

    On a torus this is ``k + 2 - t^2``, the right-hand side of
    ``(y - lam*z)(y - z/lam) = k + 2 - t^2``; on other surfaces the conic
    determinant.
    """
    prov = moduli(s)
    if isinstance(prov, Torus):
        return Fraction(prov.k + 2) - Fraction(t) ** 2
    return fiber_conic(s, axis, t).determinant()


def parabolic_flags(s: MarkoffSurface, p) -> list[str]:
    """Axes ``a`` such that the point lies on a parabolic fiber of coordinate ``a``."""
    if isinstance(moduli(s), (Torus, Sphere)):
        q = to_trace(s, p)
        return [a for a in "xyz" if classify_fiber(s, a, q[AXES[a]]).parabolic]
    return []


# -- parabolic families -----------------------------------------------------------

@dataclass(frozen=True)
class ParabolicFamily:
    axis: str
    t: Fraction
    coords: tuple  # Poly in T for x, y, z (trace coordinates)

    def at(self, T) -> SurfacePoint:
        return SurfacePoint(*(c(T) for c in self.coords))

    def to_json(self) -> dict:
        return {"axis": self.axis, "t": format_rational(self.t),
                "family": [str(c) for c in self.coords],
                "coeffs": [c.to_json() for c in self.coords]}


def _sqrt_any(q: Fraction):
    return QuadElt.sqrt(q)


def conic_line_family(conic: Conic):
    """A nonconstant polynomial family ``(u(T), v(T))`` on the conic, or ``None``.

    Only conics with unit square coefficients are handled; such a conic
    carries a polynomial family exactly when it is a parabola, a pair of
    parallel lines, or a pair of crossing lines.
    """
    if conic.uu != 1 or conic.vv != 1:
        raise PreconditionError("expected a conic with unit square terms")
    beta, delta, phi, kappa = conic.uv, conic.lu, conic.lv, conic.const
    T = Poly.T()
    if beta * beta == 4:
        h = beta / 2
        # with w = u + h*v the conic reads w^2 + delta*w + kappa + (phi - h*delta)*v = 0
        slope = phi - h * delta
        if slope != 0:
            v = -(T * T + delta * T + kappa) * (1 / slope)
            return T - h * v, v
        w0 = (-delta + _sqrt_any(delta * delta - 4 * kappa)) / 2
        return Poly.const(w0) - h * T, T
    center = conic.center()
    uc, vc = center
    if conic(uc, vc) != 0:
        return None
    lam = solve_lambda(-beta)
    return Poly.const(uc) + lam * T, Poly.const(vc) + T


def _assemble(axis: str, t, u, v):
    parts = {axis: Poly.const(t)}
    fu, fv = FREE[axis]
    parts[fu], parts[fv] = u, v
    return tuple(parts[a] for a in "xyz")


def parametrize_parabolic_fiber(s: MarkoffSurface, axis: str, t, classify: bool = True) -> ParabolicFamily:
    """A nonconstant polynomial family in the fiber ``axis = t``.

    The family is read off the geometry of the fiber conic, independently of
    :func:`classify_fiber`; with ``classify=True`` a perfect verdict is
    rejected up front.
    """
    axis = _axis(axis)
    t = Fraction(t)
    if classify and not classify_fiber(s, axis, t).parabolic:
        raise PreconditionError("perfect fiber has no polynomial family")
    fam = conic_line_family(fiber_conic(s, axis, t))
    if fam is None:
        raise PreconditionError("perfect fiber: smooth conic without polynomial family")
    coords = _assemble(axis, t, *fam)
    if not evaluate_coeffs(trace_chart(s), coords).is_zero():
        raise AssertionError("parabolic family does not lie on the fiber")
    return ParabolicFamily(axis, t, coords)


def verify_family(s: MarkoffSurface, fam: ParabolicFamily, samples=(-2, -1, 0, 1, 3)) -> bool:
    """Family is nonconstant and lands on the fiber at each sample parameter."""
    chart = trace_chart(s)
    if all(c.is_constant() for c in fam.coords):
        return False
    for T in samples:
        p = fam.at(Fraction(T))
        if p[AXES[fam.axis]] != fam.t or evaluate_coeffs(chart, p) != 0:
            return False
    return True


# -- fiber generator ---------------------------------------------------------------

def _check_on_fiber(s, axis, p, t=None):
    check_common_ring(p)
    if evaluate_coeffs(trace_chart(s), p) != 0:
        raise PreconditionError(f"point {tuple(p)} is not on the surface")
    if t is not None and p[AXES[axis]] != t:
        raise PreconditionError(f"point {tuple(p)} is not on the fiber {axis}={t}")


def _half_twist(p, axis, t, inverse=False):
    i, j = (AXES[a] for a in FREE[axis])
    q = list(p)
    u, v = p[i], p[j]
    if inverse:
        q[i], q[j] = t * u - v, u
    else:
        q[i], q[j] = v, t * v - u
    return SurfacePoint(*q)


def _uses_half_twist(s) -> bool:
    return isinstance(moduli(s), Torus)


def generator_step(s: MarkoffSurface, axis: str, p, inverse: bool = False) -> SurfacePoint:
    """One application of the fiber generator (or its inverse), unchecked.

    On the torus the generator is the half twist ``(u, v) -> (v, t*v - u)``;
    its square is the composed move ``m_v . m_u``.  Elsewhere the generator is
    ``m_v . m_u`` itself.
    """
    t = p[AXES[axis]]
    if _uses_half_twist(s):
        return _half_twist(p, axis, t, inverse)
    u, v = FREE[axis]
    chart = trace_chart(s)
    first, second = (v, u) if inverse else (u, v)
    return move_coeffs(chart, second, move_coeffs(chart, first, p))


def fiber_generator_apply(s: MarkoffSurface, axis: str, p, n: int) -> SurfacePoint:
    axis = _axis(axis)
    _check_on_fiber(s, axis, p)
    cur = SurfacePoint(*p)
    for _ in range(abs(n)):
        cur = generator_step(s, axis, cur, inverse=n < 0)
    return cur


# -- torus parametrization of perfect fibers ---------------------------------------

@dataclass(frozen=True)
class FiberParametrization:
    """``u -> (t, y, z)`` with ``y - lam*z = g*u`` and ``y - z/lam = (K/g)/u``."""
    axis: str
    t: Fraction
    lam: object
    K: Fraction
    scale: Fraction = Fraction(1)
    exponent: int = 0

    def evaluate(self, u) -> SurfacePoint:
        lam, g = self.lam, self.scale
        a = g * u
        b = (self.K / g) * (1 / u) if not isinstance(u, QuadElt) else u.inverse() * (self.K / g)
        z = (a - b) / (1 / lam - lam)
        y = a + lam * z
        return _point(self.axis, self.t, y, z)

    def inverse(self, p):
        i, j = (AXES[a] for a in FREE[self.axis])
        return (p[i] - self.lam * p[j]) / self.scale

    def to_json(self) -> dict:
        return {"axis": self.axis, "t": format_rational(self.t), "lambda": ring_to_json(self.lam),
                "K": format_rational(self.K), "scale": format_rational(self.scale),
                "exponent": self.exponent,
                "factorization": f"(u - lam*v)*(u - v/lam) = {format_rational(self.K)}"}


def _point(axis, t, u, v):
    q = {axis: t}
    fu, fv = FREE[axis]
    q[fu], q[fv] = u, v
    return SurfacePoint(q["x"], q["y"], q["z"])


def fiber_parametrization(s: MarkoffSurface, axis: str, t, scale=1) -> FiberParametrization:
    """Torus parametrization of a perfect torus fiber.

    The exponent ``e`` with ``F^-1 . g . F = (multiplication by lam^e)`` is
    found by conjugating at one sample point and then asserted at nine more.
    """
    axis = _axis(axis)
    t = Fraction(t)
    if not isinstance(moduli(s), Torus):
        raise PreconditionError("torus parametrization needs a torus surface")
    desc = classify_fiber(s, axis, t)
    if desc.parabolic:
        raise PreconditionError("parabolic fiber has no torus parametrization")
    K = degenerate_constant(s, axis, t)
    if K == 0:
        raise PreconditionError("degenerate conic: k + 2 - t^2 = 0")
    lam = solve_lambda(t)
    par = FiberParametrization(axis, t, lam, K, Fraction(scale))
    samples = [Fraction(n, 1) for n in (1, 2, -3, 5, 7)] + [Fraction(1, n) for n in (2, 3, -4, 5, 6)]
    ratio = None
    for u in samples:
        p = par.evaluate(u)
        q = generator_step(s, axis, p)
        r = par.inverse(q) / u
        if ratio is None:
            ratio = r
        elif r != ratio:
            raise AssertionError("generator is not conjugate to a multiplication")
    for e in (1, 2, -1, -2):
        if lam ** e == ratio:
            return FiberParametrization(axis, t, lam, K, Fraction(scale), e)
    raise AssertionError("generator multiplier is not a small power of lambda")


def conjugation_holds(s, par: FiberParametrization, u) -> bool:
    p = par.evaluate(u)
    q = generator_step(s, par.axis, p)
    return par.inverse(q) == par.lam ** par.exponent * u


# -- integral points and orbit decomposition -----------------------------------------

def _key(p):
    return (norm(p), sum(abs(v) for v in p))


@dataclass
class FiberOrbitReport:
    axis: str
    t: int
    H: int
    descriptor: FiberDescriptor
    points: list = field(default_factory=list)
    orbits: list = field(default_factory=list)  # (rep, period or None)
    bound: Optional[int] = None
    certified: bool = False

    @property
    def infinite_orbits(self):
        return [r for r, per in self.orbits if per is None]

    def to_json(self) -> dict:
        return {
            "axis": self.axis, "t": self.t, "H": self.H,
            "class": self.descriptor.classification, "reason": self.descriptor.reason,
            "conic": self.descriptor.conic.to_json(),
            "orbits": [{"rep": list(r), "period": per} for r, per in self.orbits],
            "sporadic": [list(p) for p in self.sporadic],
            "count": len(self.points),
            "fundamental_bound": self.bound,
            "complete_orbit_list": self.certified,
        }

    @property
    def sporadic(self):
        periodic = {r for r, per in self.orbits if per is not None}
        return [p for p in self.points if self._rep[p] in periodic]


def orbit_normal_form(s, axis, p, max_steps: int = 10_000):
    """Slide ``p`` along its generator orbit to the point of least (norm, sum).

    Runs of equal keys are resolved by the lexicographically smallest member.
    Returns ``(rep, steps)`` with ``generator^steps(rep) == p``.
    """
    cur, steps = SurfacePoint(*p), 0
    for _ in range(max_steps):
        fwd = generator_step(s, axis, cur)
        bwd = generator_step(s, axis, cur, inverse=True)
        best = min((_key(fwd), 1, fwd), (_key(bwd), -1, bwd))
        if best[0] >= _key(cur):
            break
        cur = best[2]
        steps -= best[1]
    else:
        raise PreconditionError("orbit normalization did not terminate")
    # equal-key neighbourhood
    run = [(cur, steps)]
    for direction in (False, True):
        q, n = cur, steps
        for _ in range(64):
            q = generator_step(s, axis, q, inverse=direction)
            n = n + 1 if direction else n - 1
            if _key(q) != _key(cur) or q == cur:
                break
            run.append((q, n))
    return min(run, key=lambda r: tuple(r[0]))


def orbit_period(s, axis, p, limit: int = 64) -> Optional[int]:
    q = SurfacePoint(*p)
    for n in range(1, limit + 1):
        q = generator_step(s, axis, q)
        if q == p:
            return n
    return None


def fundamental_bound(s, axis, t) -> Optional[int]:
    """Max-norm bound on one point of every generator orbit of a perfect torus fiber.

    Every orbit of ``u -> lam*u`` meets ``sqrt(|K|/|lam|) <= |u| <= sqrt(|K|*|lam|)``,
    and there both ``|u|`` and ``|K/u|`` are at most ``sqrt(|K|*|lam|)``.
    """
    t = Fraction(t)
    if not isinstance(moduli(s), Torus) or abs(t) <= 2:
        return None
    K = degenerate_constant(s, axis, t)
    if K == 0:
        return None
    lam = abs(float(t) + math.sqrt(float(t * t - 4))) / 2
    r = math.sqrt(abs(float(K)) * lam)
    return math.ceil(r * (1 + 2 * lam / (lam - 1 / lam))) + 1


def fiber_integral_points(s: MarkoffSurface, axis: str, t: int, H: int) -> FiberOrbitReport:
    """Integral points of the fiber in the box ``max|coord| <= H``, grouped into orbits."""
    axis = _axis(axis)
    if not isinstance(t, int):
        raise PreconditionError("integral points need an integer t")
    if H < 1:
        raise PreconditionError("H must be at least 1")
    desc = classify_fiber(s, axis, t)
    pts = [SurfacePoint(*p) for p in fixed_coordinate_points(*trace_chart(s), axis, t, H)]
    rep_of = {}
    reps = {}
    for p in pts:
        rep, _ = orbit_normal_form(s, axis, p)
        rep_of[p] = rep
        if rep not in reps:
            reps[rep] = orbit_period(s, axis, rep)
    report = FiberOrbitReport(axis, t, H, desc, pts, sorted(reps.items(), key=lambda kv: (_key(kv[0]), class_key(kv[0]))))
    report._rep = rep_of
    report.bound = fundamental_bound(s, axis, t)
    report.certified = report.bound is not None and not desc.parabolic and H >= report.bound
    if abs(t) < 2:
        report.certified = H >= _ellipse_extent(s, axis, t)
    return report


def _ellipse_extent(s, axis, t) -> int:
    """Max-norm bound for points of a bounded fiber conic (|t| < 2, unit square terms)."""
    c = fiber_conic(s, axis, t)
    # u^2 + beta*u*v + v^2 >= (1 - |beta|/2)(u^2 + v^2)
    m = 1 - abs(float(c.uv)) / 2
    rad = (abs(float(c.lu)) + abs(float(c.lv))) / m
    r = rad + math.sqrt(rad * rad + abs(float(c.const)) / m) + 1
    return max(abs(t), math.ceil(r))


def reachable_from(s, axis, rep, targets, max_steps: int) -> dict:
    """For each target, the exponent ``n`` with ``|n| <= max_steps`` and ``g^n(rep) = target``."""
    want = set(map(tuple, targets))
    found = {}
    for inverse in (False, True):
        q = SurfacePoint(*rep)
        if tuple(q) in want:
            found[tuple(q)] = 0
        for n in range(1, max_steps + 1):
            q = generator_step(s, axis, q, inverse=inverse)
            if tuple(q) in want and tuple(q) not in found:
                found[tuple(q)] = -n if inverse else n
    return found


# -- imaginary quadratic points -------------------------------------------------

def _od_box(d: int, H: int):
    half = d % 4 == 3
    for a, b in product(range(-H, H + 1), repeat=2):
        if half and (a - b) % 2:
            continue
        yield QuadInt(d, a, b)


def _in_box(z: QuadInt, H: int) -> bool:
    return abs(z.a) <= H and abs(z.b) <= H


def _conj_point(p):
    return SurfacePoint(*(v.conjugate() for v in p))


def _od_key(p):
    return (sum(1 for v in p if (v.a, v.b) < (0, 0)), tuple((v.a, v.b) for v in p))


def od_box_points(coeffs, d: int, H: int) -> list[SurfacePoint]:
    """All on-surface points over O_d whose QuadInt coordinates are bounded by ``H``."""
    eps, a, b, c, dd = coeffs
    box = list(_od_box(d, H))
    found = set()
    for x, y in product(box, repeat=2):
        B = eps * (x * y) - c
        C = x * x + y * y - a * x - b * y - dd
        disc = (B * B - 4 * C).to_quad()
        r = disc.sqrt_exact()
        if r is None:
            continue
        for root in {r, -r}:
            zq = (-B.to_quad() + root) / 2
            try:
                z = QuadInt.from_quad(zq, d)
            except PreconditionError:
                continue
            if _in_box(z, H):
                found.add(SurfacePoint(x, y, z))
    return sorted(found, key=_od_key)


def points_over_Od(s: MarkoffSurface, d: int, H: int) -> list[SurfacePoint]:
    """On-surface points with coordinates in O_d and QuadInt coordinates bounded by ``H``.

    One representative per class under the surface symmetries and complex
    conjugation.
    """
    if d < 1 or not _is_squarefree(d):
        raise PreconditionError("d must be a positive squarefree integer")
    if H < 0:
        raise PreconditionError("H must be nonnegative")
    found = od_box_points(s.coefficients, d, H)
    syms = symmetries(s)
    reps = set()
    for p in found:
        images = [g.apply(q) for g in syms for q in (p, _conj_point(p))]
        reps.add(min(images, key=_od_key))
    return sorted(reps, key=_od_key)
