"""Traces of simple closed curves on the once-punctured torus, and tree lengths.

Slopes ``p/q`` index the essential simple closed curves.  With
``x = tr A``, ``y = tr B``, ``z = tr AB`` the trace of a slope is computed by
walking the Stern-Brocot tree: the trace at a mediant equals the product of
the traces of its two Farey parents minus the trace of their Farey
difference.

Translation lengths use ``2 * max(0, -v(tr g))`` for an element of SL2 over
a discretely valued field.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

from .errors import BoundExceededError, PreconditionError
from .exactnum import INFINITY, PAdic, Place, RatFunc, Poly, valuation
from .mpoly import MPoly

XYZ = ("x", "y", "z")


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if (p, q) == (0, 0):
            raise PreconditionError("0/0 is not a slope")
        if gcd(p, q) != 1:
            raise PreconditionError(f"{p}/{q} is not in lowest terms")
        if q < 0 or (q == 0 and p != 1):
            raise PreconditionError(f"{p}/{q} is not in canonical form; use Slope.of")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if (p, q) == (0, 0):
            raise PreconditionError("0/0 is not a slope")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        try:
            p, _, q = text.strip().partition("/")
            return cls.of(int(p), int(q) if q else 1)
        except ValueError as exc:
            raise PreconditionError(f"malformed slope {text!r}") from exc

    @property
    def height(self) -> int:
        return abs(self.p) + self.q

    def __str__(self):
        return f"{self.p}/{self.q}"


INF_SLOPE = Slope(1, 0)


def slope_order_key(sl: Slope) -> tuple:
    """Breadth-first order: 1/0 first, then by |p|+q, ties by p ascending."""
    return (sl != INF_SLOPE, sl.height, sl.p)


def slopes_up_to(bound: int) -> list[Slope]:
    """All slopes with ``|p| <= bound`` and ``q <= bound`` in breadth-first order."""
    out = [Slope(1, 0)]
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                out.append(Slope(p, q))
    out.sort(key=slope_order_key)
    return out


# -- trace recursion ------------------------------------------------------------

def _walk(sl: Slope, x, y, z):
    if sl == INF_SLOPE:
        return x
    if (sl.p, sl.q) == (0, 1):
        return y
    if sl.p > 0:
        L, R, tL, tR, tD = (0, 1), (1, 0), y, x, x * y - z
    else:
        L, R, tL, tR, tD = (-1, 0), (0, 1), x, y, z
    while True:
        M = (L[0] + R[0], L[1] + R[1])
        tM = tL * tR - tD
        if M == (sl.p, sl.q):
            return tM
        if sl.p * M[1] < M[0] * sl.q:
            L, R, tL, tR, tD = L, M, tL, tM, tR
        else:
            L, R, tL, tR, tD = M, R, tM, tR, tL


def trace_of_slope(sl: Slope, triple: Sequence) -> object:
    """Trace of the curve of slope ``sl`` given ``(tr A, tr B, tr AB)``; exact in any ring."""
    x, y, z = triple
    return _walk(sl, x, y, z)


@lru_cache(maxsize=4096)
def trace_polynomial(sl: Slope) -> MPoly:
    x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
    return _walk(sl, x, y, z)


def farey_neighbors(sl: Slope) -> tuple[Slope, Slope] | None:
    """The two Farey parents of a slope (``None`` for 1/0, 0/1 and -1/0)."""
    if sl.q == 0 or (sl.p, sl.q) == (0, 1):
        return None
    L, R = ((0, 1), (1, 0)) if sl.p > 0 else ((-1, 0), (0, 1))
    while True:
        M = (L[0] + R[0], L[1] + R[1])
        if M == (sl.p, sl.q):
            return Slope.of(*L), Slope.of(*R)
        if sl.p * M[1] < M[0] * sl.q:
            R = M
        else:
            L = M


def farey_triangles(depth: int) -> Iterator[tuple[Slope, Slope, Slope]]:
    """Triangles ``(u, v, u+v)`` of the Farey tessellation down to Stern-Brocot depth ``depth``."""
    yield (Slope(1, 0), Slope(0, 1), Slope(1, 1))
    yield (Slope(1, 0), Slope(0, 1), Slope(-1, 1))

    def rec(L, R, d):
        if d > depth:
            return
        M = (L[0] + R[0], L[1] + R[1])
        yield (Slope.of(*L), Slope.of(*R), Slope.of(*M))
        yield from rec(L, M, d + 1)
        yield from rec(M, R, d + 1)

    for L, R in (((0, 1), (1, 1)), ((1, 1), (1, 0)), ((-1, 0), (-1, 1)), ((-1, 1), (0, 1))):
        yield from rec(L, R, 1)


def christoffel_word(sl: Slope) -> str:
    """Primitive word in ``A, B`` (``a`` for A^-1) representing the slope.

    Letter ``i`` is a B exactly when ``floor(i*q/n)`` steps up, ``n = |p|+q``.
    """
    n = sl.height
    a = "A" if sl.p >= 0 else "a"
    return "".join(
        a if (i * sl.q) // n - ((i - 1) * sl.q) // n == 0 else "B"
        for i in range(1, n + 1)
    )


# -- matrices -------------------------------------------------------------------

Matrix = tuple  # ((a, b), (c, d))


def mat_mul(g: Matrix, h: Matrix) -> Matrix:
    (a, b), (c, d) = g
    (e, f), (k, l) = h
    return ((a * e + b * k, a * f + b * l), (c * e + d * k, c * f + d * l))


def mat_det(g: Matrix):
    (a, b), (c, d) = g
    return a * d - b * c


def mat_trace(g: Matrix):
    return g[0][0] + g[1][1]


def mat_inv_sl2(g: Matrix) -> Matrix:
    (a, b), (c, d) = g
    return ((d, -b), (-c, a))


def word_matrix(word: str, A: Matrix, B: Matrix) -> Matrix:
    table = {"A": A, "B": B, "a": mat_inv_sl2(A), "b": mat_inv_sl2(B)}
    out = ((1, 0), (0, 1))
    for ch in word:
        out = mat_mul(out, table[ch])
    return out


def _is_one(v) -> bool:
    return v == 1


def translation_length(g: Matrix, place: Place) -> int:
    """Displacement of ``g`` on the Bruhat-Tits tree: ``2*max(0, -v(tr g))``.

    A zero trace counts as integral, so it gives length 0.
    """
    if not _is_one(mat_det(g)):
        raise PreconditionError("matrix does not have determinant 1")
    tr = mat_trace(g)
    if _is_zero(tr):
        return 0
    return 2 * max(0, -valuation(tr, place))


def _is_zero(v) -> bool:
    if isinstance(v, (RatFunc, Poly)):
        return v.is_zero()
    return v == 0


def _val(v, place) -> float:
    return float("inf") if _is_zero(v) else valuation(v, place)


# -- witnesses ------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    slope: Slope
    trace: object
    valuation: float

    def to_json(self) -> dict:
        v = self.valuation
        return {"slope": str(self.slope), "trace": _fmt(self.trace),
                "valuation": "inf" if v == float("inf") else int(v)}


def _fmt(v):
    from .surface import ring_to_json
    if isinstance(v, (RatFunc, Poly)):
        return str(v)
    return ring_to_json(v)


def boundary_trace(triple: Sequence):
    """``tr(A B A^-1 B^-1) = x^2+y^2+z^2-xyz-2``."""
    x, y, z = triple
    return x * x + y * y + z * z - x * y * z - 2


def traces_of_rep(A: Matrix, B: Matrix) -> tuple:
    for g in (A, B):
        if not _is_one(mat_det(g)):
            raise PreconditionError("matrix does not have determinant 1")
    return (mat_trace(A), mat_trace(B), mat_trace(mat_mul(A, B)))


def _ordered_traces(triple, bound: int) -> Iterator[tuple[Slope, object]]:
    """Lazily yield ``(slope, trace)`` for ``|p|, q <= bound`` in breadth-first order.

    Stern-Brocot nodes wait in a heap keyed by the height of their mediant, so
    each trace costs one multiplication and nothing deeper than the first hit
    is ever computed.
    """
    x, y, z = triple
    yield INF_SLOPE, x
    yield Slope(0, 1), y
    heap: list = []
    counter = 0

    def push(L, R, tL, tR, tD):
        nonlocal counter
        M = (L[0] + R[0], L[1] + R[1])
        # descendants only grow |p| and q
        if abs(M[0]) > bound or M[1] > bound:
            return
        counter += 1
        heapq.heappush(heap, (abs(M[0]) + M[1], M[0], counter, M, (L, R, tL, tR, tD)))

    push((0, 1), (1, 0), y, x, x * y - z)
    push((-1, 0), (0, 1), x, y, z)
    while heap:
        _, _, _, M, (L, R, tL, tR, tD) = heapq.heappop(heap)
        tM = tL * tR - tD
        yield Slope(*M), tM
        push(L, M, tL, tM, tR)
        push(M, R, tM, tR, tL)


def witness_search(triple: Sequence, place: Place, slope_bound: int) -> Witness:
    """First slope (breadth-first) whose trace has valuation >= 0 at ``place``."""
    best = None
    for sl, tr in _ordered_traces(triple, slope_bound):
        v = _val(tr, place)
        if v >= 0:
            return Witness(sl, tr, v)
        if best is None or v > best.valuation:
            best = Witness(sl, tr, v)
    raise BoundExceededError(
        f"witness bound exceeded: no slope with |p|, q <= {slope_bound} has integral trace",
        best=best.to_json() if best else None,
    )


def systole_search(source, place: Place, slope_bound: int) -> Witness:
    """Shortest-first search for an essential curve with integral trace.

    ``source`` is a trace triple ``(x, y, z)`` or a pair of SL2 matrices ``(A, B)``.
    """
    if len(source) == 2:
        A, B = source
        triple = traces_of_rep(A, B)
        kappa = mat_trace(mat_mul(mat_mul(A, B), mat_mul(mat_inv_sl2(A), mat_inv_sl2(B))))
    else:
        triple = tuple(source)
        kappa = boundary_trace(triple)
    if _val(kappa, place) < 0:
        raise PreconditionError("boundary trace not integral")
    w = witness_search(triple, place, slope_bound)
    assert w.valuation >= 0
    return w


def constant_trace_slope(triple: Sequence, slope_bound: int) -> Witness:
    """First slope whose trace along a polynomial family ``T -> (x, y, z)`` is constant."""
    polys = tuple(Poly.const(c) if not isinstance(c, Poly) else c for c in triple)
    for sl, tr in _ordered_traces(polys, slope_bound):
        if tr.is_constant():
            return Witness(sl, tr, 0 if not tr.is_zero() else float("inf"))
    raise BoundExceededError(f"no slope with |p|, q <= {slope_bound} has constant trace")


def place_from_text(text: str) -> Place:
    """``"2"`` for the 2-adic place, ``"inf"`` for T -> infinity, ``"T=a"`` for a point."""
    from .exactnum import AtPoint, parse_rational
    text = text.strip()
    if text in ("inf", "infinity", "oo"):
        return INFINITY
    if text.startswith("T="):
        return AtPoint(parse_rational(text[2:]))
    try:
        return PAdic(int(text))
    except ValueError as exc:
        raise PreconditionError(f"unknown place {text!r}") from exc


def parse_matrix(text: str) -> Matrix:
    """``"[[2,0],[0,1/2]]"`` with rational entries."""
    from .exactnum import parse_rational
    body = text.strip().replace(" ", "")
    if not (body.startswith("[[") and body.endswith("]]")):
        raise PreconditionError(f"malformed matrix {text!r}")
    rows = [r.split(",") for r in body[2:-2].split("],[")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise PreconditionError("expected a 2x2 matrix")
    return tuple(tuple(parse_rational(v) for v in r) for r in rows)
