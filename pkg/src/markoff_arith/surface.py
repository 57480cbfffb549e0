"""Markoff-type cubic surfaces ``x^2+y^2+z^2+eps*xyz = ax+by+cz+d``.

Vieta moves, signed-permutation symmetries, greedy max-norm descent, box
enumeration of minimal points and bounded orbit search.

Torus surfaces are stored in the canonical ``+xyz`` form.  Their trace
coordinates (where the cubic reads ``x^2+y^2+z^2-xyz-2 = k``) differ by the
involution ``x -> -x``; see :func:`to_trace` and :func:`from_trace`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import NamedTuple, Sequence, Union

from .errors import BoundExceededError, PreconditionError
from .exactnum import Poly, QuadElt, QuadInt
from .mpoly import MPoly
from .scan import box_points

XYZ = ("x", "y", "z")
AXES = {"x": 0, "y": 1, "z": 2}


# -- provenance ---------------------------------------------------------------

@dataclass(frozen=True)
class Raw:
    def to_json(self):
        return {"kind": "raw"}


@dataclass(frozen=True)
class Torus:
    k: int

    def to_json(self):
        return {"kind": "torus", "k": self.k}


@dataclass(frozen=True)
class Sphere:
    k1: int
    k2: int
    k3: int
    k4: int

    @property
    def ks(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)

    def to_json(self):
        return {"kind": "sphere", "k": list(self.ks)}


Provenance = Union[Raw, Torus, Sphere]


@dataclass(frozen=True)
class MarkoffSurface:
    eps: int
    a: int
    b: int
    c: int
    d: int
    provenance: Provenance = Raw()

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise PreconditionError("eps must be +1 or -1")
        for name in "abcd":
            if not isinstance(getattr(self, name), int):
                raise PreconditionError(f"coefficient {name} must be an integer")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.eps, self.a, self.b, self.c, self.d)

    @property
    def linear(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def polynomial(self) -> MPoly:
        x, y, z = (MPoly.var(XYZ, v) for v in XYZ)
        return (x * x + y * y + z * z + self.eps * x * y * z
                - self.a * x - self.b * y - self.c * z - self.d)

    def to_json(self) -> dict:
        return {"eps": self.eps, "a": self.a, "b": self.b, "c": self.c, "d": self.d,
                "provenance": self.provenance.to_json()}

    def __str__(self):
        sign = "+" if self.eps > 0 else "-"
        rhs = [("" if c == 1 else "-" if c == -1 else str(c)) + v for c, v in zip(self.linear, XYZ) if c] + ([str(self.d)] if self.d or not any(self.linear) else [])
        return f"x^2+y^2+z^2{sign}xyz = " + "+".join(rhs).replace("+-", "-")


class SurfacePoint(NamedTuple):
    x: object
    y: object
    z: object

    def to_json(self) -> dict:
        return {"x": ring_to_json(self.x), "y": ring_to_json(self.y), "z": ring_to_json(self.z)}


def ring_to_json(v):
    if isinstance(v, bool):
        raise PreconditionError("booleans are not ring elements")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    raise PreconditionError(f"cannot serialize {v!r}")


# -- constructors ---------------------------------------------------------------

def from_torus(k: int) -> MarkoffSurface:
    """Once-punctured torus with boundary trace ``k`` in canonical coordinates."""
    return MarkoffSurface(1, 0, 0, 0, k + 2, Torus(k))


def from_sphere(k1: int, k2: int, k3: int, k4: int) -> MarkoffSurface:
    A = k1 * k2 + k3 * k4
    B = k2 * k3 + k1 * k4
    C = k1 * k3 + k2 * k4
    D = 4 - k1 * k1 - k2 * k2 - k3 * k3 - k4 * k4 - k1 * k2 * k3 * k4
    return MarkoffSurface(1, A, B, C, D, Sphere(k1, k2, k3, k4))


def raw(eps: int, a: int, b: int, c: int, d: int) -> MarkoffSurface:
    return MarkoffSurface(eps, a, b, c, d, Raw())


def moduli(s: MarkoffSurface) -> Provenance:
    """Provenance, inferring a torus for raw surfaces of the right shape."""
    if not isinstance(s.provenance, Raw):
        return s.provenance
    if s.a == s.b == s.c == 0:
        return Torus(s.d - 2)
    return s.provenance


def trace_chart(s: MarkoffSurface) -> tuple[int, int, int, int, int]:
    """Coefficients in the coordinates where traces live.

    For a torus this is the ``-xyz`` form; otherwise the surface itself.
    """
    if isinstance(moduli(s), Torus) and s.eps == 1:
        return (-1, 0, 0, 0, s.d)
    return s.coefficients


def _torus_flip(s: MarkoffSurface) -> bool:
    return isinstance(moduli(s), Torus) and s.eps == 1


def to_trace(s: MarkoffSurface, p) -> SurfacePoint:
    """Canonical coordinates to trace coordinates (``x -> -x`` on a torus)."""
    x, y, z = p
    return SurfacePoint(-x, y, z) if _torus_flip(s) else SurfacePoint(x, y, z)


def from_trace(s: MarkoffSurface, p) -> SurfacePoint:
    return to_trace(s, p)


# -- evaluation and moves -------------------------------------------------------


def _ring_kind(v):
    if isinstance(v, bool):
        raise PreconditionError("booleans are not ring elements")
    if isinstance(v, int):
        return ("Z",)
    if isinstance(v, Fraction):
        return ("Q",) if v.denominator != 1 else ("Z",)
    if isinstance(v, QuadInt):
        return ("O", v.d)
    if isinstance(v, QuadElt):
        return ("K", v.D) if v.s != 0 else ("Q",)
    if isinstance(v, Poly):
        return ("P",)
    if isinstance(v, MPoly):
        return ("M", v.vars)
    raise PreconditionError(f"unsupported ring element {v!r}")


def check_common_ring(p) -> None:
    kinds = {_ring_kind(v) for v in p}
    exotic = {k for k in kinds if k[0] not in ("Z", "Q")}
    if len(exotic) > 1:
        raise PreconditionError(f"coordinates from mixed rings: {sorted(map(str, exotic))}")
    if exotic:
        (kind,) = exotic
        # rationals only combine with fields and polynomials, not with O_d
        if kind[0] == "O" and ("Q",) in kinds:
            raise PreconditionError("coordinates from mixed rings: O_d and Q")


def evaluate_coeffs(coeffs, p):
    eps, a, b, c, d = coeffs
    x, y, z = p
    return x * x + y * y + z * z + eps * (x * y * z) - a * x - b * y - c * z - d


def evaluate(s: MarkoffSurface, p) -> object:
    """``x^2+y^2+z^2+eps*xyz-ax-by-cz-d`` at ``p``; zero iff ``p`` is on ``s``."""
    check_common_ring(p)
    return evaluate_coeffs(s.coefficients, p)


def _is_zero(v) -> bool:
    if isinstance(v, (Poly, MPoly)):
        return v.is_zero()
    return v == 0


def on_surface(s: MarkoffSurface, p) -> bool:
    return _is_zero(evaluate(s, p))


def move_coeffs(coeffs, axis: str, p) -> SurfacePoint:
    eps, a, b, c, _ = coeffs
    x, y, z = p
    if axis == "x":
        return SurfacePoint(a - eps * (y * z) - x, y, z)
    if axis == "y":
        return SurfacePoint(x, b - eps * (x * z) - y, z)
    if axis == "z":
        return SurfacePoint(x, y, c - eps * (x * y) - z)
    raise PreconditionError(f"unknown axis {axis!r}")


def vieta_move(s: MarkoffSurface, axis: str, p, check: bool = True) -> SurfacePoint:
    """Swap the two roots of the cubic viewed as a quadratic in ``axis``."""
    if check and not on_surface(s, p):
        raise PreconditionError(f"point {tuple(p)} is not on the surface")
    return move_coeffs(s.coefficients, axis, p)


# -- symmetries -----------------------------------------------------------------

@dataclass(frozen=True)
class Sym:
    """``(x, y, z) -> (s0*p[perm0], s1*p[perm1], s2*p[perm2])``."""
    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    def apply(self, p) -> SurfacePoint:
        return SurfacePoint(*(p[i] if sg == 1 else -p[i]
                              for i, sg in zip(self.perm, self.signs)))

    def inverse(self) -> "Sym":
        inv = [0, 0, 0]
        for i, j in enumerate(self.perm):
            inv[j] = i
        return Sym(tuple(inv), tuple(self.signs[inv[j]] for j in range(3)))

    def then(self, other: "Sym") -> "Sym":
        """The map ``p -> other(self(p))``."""
        return Sym(tuple(self.perm[j] for j in other.perm),
                   tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(3)))

    @property
    def is_identity(self) -> bool:
        return self.perm == (0, 1, 2) and self.signs == (1, 1, 1)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "signs": list(self.signs)}

    def __str__(self):
        return "(" + ",".join(("-" if sg < 0 else "") + XYZ[i]
                              for i, sg in zip(self.perm, self.signs)) + ")"


IDENTITY = Sym((0, 1, 2), (1, 1, 1))


def symmetries(s: MarkoffSurface) -> list[Sym]:
    """Signed permutations with an even number of flips preserving ``s``.

    Each candidate is screened on the linear coefficients and then confirmed
    by substituting into the surface polynomial.
    """
    F = s.polynomial()
    lin = s.linear
    gens = [MPoly.var(XYZ, v) for v in XYZ]
    out = []
    for perm in permutations(range(3)):
        for signs in product((1, -1), repeat=3):
            if signs[0] * signs[1] * signs[2] != 1:
                continue
            if any(lin[i] * signs[i] != lin[perm[i]] for i in range(3)):
                continue
            sym = Sym(perm, signs)
            if F(*sym.apply(gens)) != F:
                continue
            out.append(sym)
    out.sort(key=lambda g: (not g.is_identity, g.perm, tuple(-v for v in g.signs)))
    return out


# -- move words -----------------------------------------------------------------

Letter = Union[str, Sym]


def apply_letter(s: MarkoffSurface, p, letter: Letter, check: bool = False) -> SurfacePoint:
    if isinstance(letter, Sym):
        return letter.apply(p)
    return vieta_move(s, letter, p, check=check)


def apply_word(s: MarkoffSurface, p, word: Sequence[Letter], check: bool = True) -> SurfacePoint:
    """Apply the letters of ``word`` left to right."""
    if check and not on_surface(s, p):
        raise PreconditionError(f"point {tuple(p)} is not on the surface")
    cur = SurfacePoint(*p)
    for letter in word:
        cur = apply_letter(s, cur, letter)
    return cur


def invert_word(word: Sequence[Letter]) -> list[Letter]:
    return [w.inverse() if isinstance(w, Sym) else w for w in reversed(word)]


def reduce_word(word: Sequence[Letter]) -> list[Letter]:
    """Cancel repeated moves and merge adjacent symmetries."""
    out: list[Letter] = []
    for w in word:
        if isinstance(w, Sym):
            if out and isinstance(out[-1], Sym):
                w = out.pop().then(w)
            if not w.is_identity:
                out.append(w)
        elif out and out[-1] == w:
            out.pop()
        else:
            out.append(w)
    return out


def word_to_json(word: Sequence[Letter]) -> list[dict]:
    return [{"sym": w.to_json()} if isinstance(w, Sym) else {"move": w} for w in word]


def word_from_json(obj: list[dict]) -> list[Letter]:
    out: list[Letter] = []
    for item in obj:
        if "move" in item:
            if item["move"] not in AXES:
                raise PreconditionError(f"unknown move {item['move']!r}")
            out.append(item["move"])
        else:
            out.append(Sym(tuple(item["sym"]["perm"]), tuple(item["sym"]["signs"])))
    return out


# -- descent ----------------------------------------------------------------------

def norm(p) -> int:
    return max(abs(v) for v in p)


def _require_integral_point(s: MarkoffSurface, p) -> SurfacePoint:
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in p):
        raise PreconditionError("descent needs integer coordinates")
    pt = SurfacePoint(*p)
    if evaluate(s, pt) != 0:
        raise PreconditionError(f"point {tuple(p)} is not on the surface")
    return pt


def _best_move(s: MarkoffSurface, p: SurfacePoint):
    best = None
    for i, axis in enumerate(XYZ):
        q = move_coeffs(s.coefficients, axis, p)
        key = (norm(q), sum(abs(v) for v in q), i)
        if best is None or key < best[0]:
            best = (key, axis, q)
    return best


def descend(s: MarkoffSurface, p, max_steps: int = 100_000) -> tuple[SurfacePoint, list[str]]:
    """Greedy Vieta descent in the max-norm.

    At each step the move with the smallest resulting norm is taken (ties by
    the sum of absolute values, then x < y < z), provided it strictly lowers
    the norm.
    """
    cur = _require_integral_point(s, p)
    word: list[str] = []
    while True:
        key, axis, q = _best_move(s, cur)
        if key[0] >= norm(cur):
            return cur, word
        if len(word) >= max_steps:
            raise BoundExceededError(
                f"descent exceeded {max_steps} steps",
                best={"point": list(cur), "word": word[-20:]},
            )
        word.append(axis)
        cur = q


def is_minimal(s: MarkoffSurface, p) -> bool:
    n = norm(p)
    return all(norm(move_coeffs(s.coefficients, a, p)) >= n for a in XYZ)


def class_key(p) -> tuple:
    return (sum(1 for v in p if v < 0), tuple(p))


def canonical_rep(p, syms: Sequence[Sym]) -> SurfacePoint:
    """Representative of the symmetry class: fewest negatives, then lexicographic."""
    return min((g.apply(p) for g in syms), key=class_key)


def enumerate_minimal(s: MarkoffSurface, H: int, workers: int | None = None) -> list[SurfacePoint]:
    """Descend-minimal integral points with max-norm <= H, one per symmetry class."""
    if H < 1:
        raise PreconditionError("H must be at least 1")
    syms = symmetries(s)
    reps = {
        canonical_rep(p, syms)
        for p in box_points(*s.coefficients, H, workers=workers)
        if is_minimal(s, p)
    }
    return sorted(reps)


def orbit_equal(s: MarkoffSurface, p, q, depth: int, norm_cap: int | None = None):
    """A move word carrying ``p`` to ``q``, or ``None`` if none is found.

    Both points are first descended; the connecting search is a breadth-first
    search over moves and symmetries, at most ``depth`` letters long and
    confined to points of norm at most ``norm_cap`` (default: the larger of
    the two descended norms).
    """
    p = _require_integral_point(s, p)
    q = _require_integral_point(s, q)
    if p == q:
        return []
    p0, wp = descend(s, p)
    q0, wq = descend(s, q)
    cap = norm_cap if norm_cap is not None else max(norm(p0), norm(q0))
    gens: list[Letter] = list(XYZ) + [g for g in symmetries(s) if not g.is_identity]
    parent: dict[SurfacePoint, tuple] = {p0: None}
    frontier = deque([(p0, 0)])
    found = p0 == q0
    while frontier and not found:
        cur, dist = frontier.popleft()
        if dist >= depth:
            continue
        for g in gens:
            nxt = apply_letter(s, cur, g)
            if nxt in parent or norm(nxt) > cap:
                continue
            parent[nxt] = (cur, g)
            if nxt == q0:
                found = True
                break
            frontier.append((nxt, dist + 1))
    if not found:
        return None
    path: list[Letter] = []
    node = q0
    while parent[node] is not None:
        prev, g = parent[node]
        path.append(g)
        node = prev
    path.reverse()
    return reduce_word(list(wp) + path + invert_word(wq))
