"""Exact arithmetic: rationals, quadratic fields, univariate polynomials and
rational functions, and discrete valuations.

Rationals are plain :class:`fractions.Fraction` values.  Everything here is an
immutable value type.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import PreconditionError

Rational = Union[int, Fraction]

# Trial-division bound for squarefree reduction; test inputs stay far below it.
SQUAREFREE_TRIAL_BOUND = 10**7


# ---------------------------------------------------------------------------
# integers and rationals
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_int(n: int, bound: int = SQUAREFREE_TRIAL_BOUND) -> dict[int, int]:
    """Trial-division factorization of ``|n|``.

    Raises once trial divisors pass ``bound`` with a cofactor still above
    ``bound**2``; large-integer factorization is deliberately unsupported.
    """
    n = abs(n)
    if n == 0:
        raise PreconditionError("cannot factor zero")
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        if f > bound:
            raise PreconditionError(f"trial division bound {bound} exceeded")
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(m, D)`` with ``n == m*m*D``, ``m > 0`` and ``D`` squarefree (sign kept)."""
    if n == 0:
        raise PreconditionError("zero has no squarefree part")
    m, core = 1, (1 if n > 0 else -1)
    for p, e in factor_int(n).items():
        m *= p ** (e // 2)
        if e % 2:
            core *= p
    return m, core


@lru_cache(maxsize=4096)
def _is_squarefree(n: int) -> bool:
    return squarefree_decompose(n)[0] == 1


def rational_sqrt(q: Rational) -> Fraction | None:
    """Exact nonnegative square root of a rational, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def padic_valuation(r: Rational, p: int) -> int:
    """Exponent of the prime ``p`` in the rational ``r``."""
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    r = Fraction(r)
    if r == 0:
        raise PreconditionError("valuation of zero")
    v = 0
    num, den = abs(r.numerator), r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def format_rational(q: Rational) -> str:
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# quadratic fields
# ---------------------------------------------------------------------------

class QuadElt:
    """``r + s*sqrt(D)`` with rational ``r, s`` and squarefree ``D`` (not 0 or 1).

    Elements with ``s == 0`` compare and hash like the rational ``r``.
    """

    __slots__ = ("D", "r", "s")

    def __init__(self, D: int, r: Rational = 0, s: Rational = 0):
        if D in (0, 1):
            raise PreconditionError("D must not be 0 or 1")
        if not _is_squarefree(D):
            raise PreconditionError(f"D={D} is not squarefree; use QuadElt.sqrt")
        object.__setattr__(self, "D", D)
        object.__setattr__(self, "r", Fraction(r))
        object.__setattr__(self, "s", Fraction(s))

    def __setattr__(self, name, value):
        raise AttributeError("QuadElt is immutable")

    @classmethod
    def sqrt(cls, n: Rational) -> Union["QuadElt", Fraction]:
        """Square root of a rational, reduced to a squarefree radicand."""
        n = Fraction(n)
        if n == 0:
            return Fraction(0)
        root = rational_sqrt(n)
        if root is not None:
            return root
        m, core = squarefree_decompose(n.numerator * n.denominator)
        return cls(core, 0, Fraction(m, n.denominator))

    # -- helpers ----------------------------------------------------------
    def _lift(self, other) -> "QuadElt | None":
        if isinstance(other, QuadElt):
            if other.s != 0 and self.s != 0 and other.D != self.D:
                raise PreconditionError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
            if self.s == 0 and other.s != 0:
                return other
            return QuadElt(self.D, other.r, other.s)
        if isinstance(other, (int, Fraction)):
            return QuadElt(self.D, other, 0)
        return None

    def _field(self, other: "QuadElt") -> int:
        return other.D if self.s == 0 else self.D

    @property
    def is_rational(self) -> bool:
        return self.s == 0

    def conjugate(self) -> "QuadElt":
        return QuadElt(self.D, self.r, -self.s)

    def norm(self) -> Fraction:
        return self.r * self.r - self.D * self.s * self.s

    def trace(self) -> Fraction:
        return 2 * self.r

    def simplify(self) -> Union["QuadElt", Fraction]:
        return self.r if self.s == 0 else self

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElt(self._field(o), self.r + o.r, self.s + o.s)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(self.D, -self.r, -self.s)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadElt(self._field(o), self.r - o.r, self.s - o.s)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        D = self._field(o)
        return QuadElt(D, self.r * o.r + D * self.s * o.s, self.r * o.s + self.s * o.r)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadElt division by zero")
        return QuadElt(self.D, self.r / n, -self.s / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = QuadElt(self.D, 1, 0)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        if isinstance(other, QuadElt):
            if self.s == 0 and other.s == 0:
                return self.r == other.r
            return self.D == other.D and self.r == other.r and self.s == other.s
        if isinstance(other, (int, Fraction)):
            return self.s == 0 and self.r == other
        return NotImplemented

    def __hash__(self):
        return hash(self.r) if self.s == 0 else hash((self.D, self.r, self.s))

    def __bool__(self):
        return self.r != 0 or self.s != 0

    def __complex__(self):
        return complex(self.r) + float(self.s) * cmath.sqrt(self.D)

    def __abs__(self) -> float:
        return abs(complex(self))

    def sqrt_exact(self) -> Union["QuadElt", Fraction, None]:
        """A square root inside the same field, or None."""
        if self.s == 0:
            root = rational_sqrt(self.r)
            if root is not None:
                return root
            v = rational_sqrt(self.r / self.D)
            return None if v is None else QuadElt(self.D, 0, v)
        n = rational_sqrt(self.norm())
        if n is None:
            return None
        for u2 in ((self.r + n) / 2, (self.r - n) / 2):
            u = rational_sqrt(u2)
            if u is None or u == 0:
                continue
            w = QuadElt(self.D, u, self.s / (2 * u))
            if w * w == self:
                return w
        return None

    # -- text / json ------------------------------------------------------
    def __repr__(self):
        return f"QuadElt(D={self.D}, r={self.r}, s={self.s})"

    def __str__(self):
        if self.s == 0:
            return str(self.r)
        rad = f"sqrt({self.D})"
        mag = rad if abs(self.s) == 1 else f"{abs(self.s)}*{rad}"
        if self.r == 0:
            return mag if self.s > 0 else "-" + mag
        sign = "+" if self.s > 0 else "-"
        return f"{self.r}{sign}{mag}"

    def to_json(self) -> dict:
        return {"D": self.D, "r": str(self.r), "s": str(self.s)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadElt":
        return cls(int(obj["D"]), Fraction(obj["r"]), Fraction(obj["s"]))


class QuadInt:
    """Element of the ring of integers of Q(sqrt(-d)).

    Stored by numerators: ``a + b*sqrt(-d)``, or ``(a + b*sqrt(-d))/2`` with
    ``a = b (mod 2)`` when ``d = 3 (mod 4)``.
    """

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a: int, b: int):
        if d <= 0 or not _is_squarefree(d):
            raise PreconditionError(f"d={d} must be positive squarefree")
        if d % 4 == 3 and (a - b) % 2:
            raise PreconditionError("half-basis coordinates need a = b mod 2")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadInt is immutable")

    @property
    def half_basis(self) -> bool:
        return self.d % 4 == 3

    @classmethod
    def from_int(cls, d: int, n: int) -> "QuadInt":
        return cls(d, 2 * n, 0) if d % 4 == 3 else cls(d, n, 0)

    @classmethod
    def from_quad(cls, z, d: int) -> "QuadInt":
        if not quad_ring_membership(_as_quad(z, -d), d):
            raise PreconditionError(f"{z} is not in O_{d}")
        q = _as_quad(z, -d)
        if d % 4 == 3:
            return cls(d, int(2 * q.r), int(2 * q.s))
        return cls(d, int(q.r), int(q.s))

    def to_quad(self) -> QuadElt:
        w = 2 if self.half_basis else 1
        return QuadElt(-self.d, Fraction(self.a, w), Fraction(self.b, w))

    def _coerce(self, other) -> "QuadInt | None":
        if isinstance(other, QuadInt):
            if other.d != self.d:
                raise PreconditionError(f"mixing O_{self.d} and O_{other.d}")
            return other
        if isinstance(other, int):
            return QuadInt.from_int(self.d, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadInt(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.a * o.a - self.d * self.b * o.b
        b = self.a * o.b + self.b * o.a
        if self.half_basis:
            return QuadInt(self.d, a // 2, b // 2)
        return QuadInt(self.d, a, b)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QuadInt.from_int(self.d, 1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.d, self.a, -self.b)

    def __eq__(self, other):
        if isinstance(other, QuadInt):
            return (self.d, self.a, self.b) == (other.d, other.a, other.b)
        if isinstance(other, int):
            return self == QuadInt.from_int(self.d, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def __lt__(self, other):
        return (self.a, self.b) < (other.a, other.b)

    def __repr__(self):
        return f"QuadInt(d={self.d}, a={self.a}, b={self.b})"

    def __str__(self):
        return str(self.to_quad()).replace(f"sqrt({-self.d})", f"sqrt(-{self.d})")

    def to_json(self) -> dict:
        return {"d": self.d, "a": self.a, "b": self.b}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadInt":
        return cls(int(obj["d"]), int(obj["a"]), int(obj["b"]))


def _as_quad(z, D: int) -> QuadElt:
    if isinstance(z, QuadElt):
        return z
    if isinstance(z, QuadInt):
        return z.to_quad()
    return QuadElt(D, z, 0)


def quad_ring_membership(z, d: int) -> bool:
    """Whether ``z`` (an element of Q(sqrt(-d))) lies in O_d."""
    if isinstance(z, QuadElt) and z.s != 0 and z.D > 0:
        raise PreconditionError("not imaginary quadratic")
    if d <= 0:
        raise PreconditionError("not imaginary quadratic")
    z = _as_quad(z, -d)
    if z.s != 0 and z.D != -d:
        return False
    r2, s2 = 2 * z.r, 2 * z.s
    if d % 4 == 3:
        return (r2.denominator == 1 and s2.denominator == 1
                and (r2.numerator - s2.numerator) % 2 == 0)
    return z.r.denominator == 1 and z.s.denominator == 1


def solve_lambda(t: Rational) -> Union[QuadElt, Fraction]:
    """A root of ``lam + 1/lam = t``.

    When ``t*t - 4`` is a rational square the root of larger absolute value is
    returned as a Fraction (so ``t = +-2`` gives ``+-1``).
    """
    t = Fraction(t)
    disc = t * t - 4
    root = rational_sqrt(disc)
    if root is not None:
        lam1, lam2 = (t + root) / 2, (t - root) / 2
        return lam1 if abs(lam1) >= abs(lam2) else lam2
    return t / 2 + QuadElt.sqrt(disc) / 2


# ---------------------------------------------------------------------------
# univariate polynomials and rational functions
# ---------------------------------------------------------------------------

NEG_INF = -math.inf

Scalar = Union[int, Fraction, QuadElt]


def _norm_scalar(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, QuadElt):
        return c.r if c.s == 0 else c
    if isinstance(c, Fraction):
        return c
    raise TypeError(f"unsupported coefficient {c!r}")


class Poly:
    """Univariate polynomial in ``T`` over Q or a quadratic field.

    ``coeffs[i]`` is the coefficient of ``T**i``; no trailing zeros.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_norm_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def T(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, QuadElt)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out, base = Poly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(o.coeffs) + 1, 0)
        inv_lead = 1 / o.lead
        for i in range(len(rem) - len(o.coeffs), -1, -1):
            c = rem[i + len(o.coeffs) - 1] * inv_lead
            q[i] = c
            if c != 0:
                for j, b in enumerate(o.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(q), Poly(rem[: len(o.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadElt)):
            return Poly([c / other for c in self.coeffs])
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, QuadElt)):
            return RatFunc(Poly([other]), self)
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, RatFunc):
                return other == self
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant_value())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> "Poly":
        return self / self.lead if self.coeffs else self

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def taylor_shift(self, alpha) -> "Poly":
        """Coefficients of ``p(alpha + S)`` as a polynomial in ``S``."""
        return self(Poly([alpha, 1]))

    def reversed_to(self, m: int) -> "Poly":
        """``S**m * p(1/S)`` for ``m >= degree``."""
        return Poly([self.coeff(m - i) for i in range(m + 1)])

    def order_at(self, alpha) -> int:
        """Multiplicity of ``alpha`` as a root."""
        if self.is_zero():
            raise PreconditionError("valuation of zero")
        k, p = 0, self
        lin = Poly([-alpha, 1])
        while True:
            q, r = divmod(p, lin)
            if not r.is_zero():
                return k
            k, p = k + 1, q

    def is_integral(self) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            cs = f"({c})" if isinstance(c, QuadElt) else str(c)
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(cs + ("*" + mono if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [c.to_json() if isinstance(c, QuadElt) else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: list) -> "Poly":
        return cls([QuadElt.from_json(c) if isinstance(c, dict) else Fraction(c) for c in obj])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial if both vanish)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """``(g, s, t)`` with ``s*a + t*b == g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly([1]), Poly()
    t0, t1 = Poly(), Poly([1])
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead = r0.lead
    return r0 / lead, s0 / lead, t0 / lead


class RatFunc:
    """Quotient of polynomials in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lead
            num, den = num / lead, den / lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def T(cls) -> "RatFunc":
        return cls(Poly.T())

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (Poly, int, Fraction, QuadElt)):
            return RatFunc(other)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def constant_value(self):
        return self.num.constant_value()

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash(self.num) if self.is_polynomial() else hash((self.num, self.den))

    def __call__(self, value):
        d = self.den(value)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(value) / d

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RatFunc":
        return cls(Poly.from_json(obj["num"]), Poly.from_json(obj["den"]))


# ---------------------------------------------------------------------------
# places and valuations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PAdic:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise PreconditionError(f"{self.p} is not prime")

    def __str__(self):
        return f"p={self.p}"


@dataclass(frozen=True)
class AtPoint:
    alpha: Fraction

    def __str__(self):
        return f"T={self.alpha}"


@dataclass(frozen=True)
class AtInfinity:
    def __str__(self):
        return "T=oo"


INFINITY = AtInfinity()

Place = Union[PAdic, AtPoint, AtInfinity]


def place_valuation(f, place: Place) -> int:
    """Order of vanishing of a nonzero rational function at a place of Q(T).

    At infinity this is ``deg(den) - deg(num)``.
    """
    if isinstance(f, (int, Fraction, QuadElt)):
        f = RatFunc(f)
    elif isinstance(f, Poly):
        f = RatFunc(f)
    if f.is_zero():
        raise PreconditionError("valuation of zero")
    if isinstance(place, AtInfinity):
        return f.den.degree - f.num.degree
    if isinstance(place, AtPoint):
        return f.num.order_at(place.alpha) - f.den.order_at(place.alpha)
    raise PreconditionError(f"{place} is not a place of a function field")


def valuation(x, place: Place) -> int:
    """Discrete valuation of a rational (p-adic place) or rational function."""
    if isinstance(place, PAdic):
        if isinstance(x, (Poly, RatFunc)):
            raise PreconditionError("p-adic place needs a rational payload")
        return padic_valuation(x, place.p)
    return place_valuation(x, place)


def is_integral_at(x, place: Place) -> bool:
    """``v(x) >= 0``, with ``v(0) = +oo``."""
    if x == 0:
        return True
    return valuation(x, place) >= 0


@dataclass(frozen=True)
class ValuedElement:
    """A field element together with the place used to value it."""

    payload: object
    place: Place

    def valuation(self) -> int:
        return valuation(self.payload, self.place)

    def _check(self, other: "ValuedElement"):
        if other.place != self.place:
            raise PreconditionError("elements valued at different places")

    def __add__(self, other: "ValuedElement"):
        self._check(other)
        return ValuedElement(self.payload + other.payload, self.place)

    def __mul__(self, other: "ValuedElement"):
        self._check(other)
        return ValuedElement(self.payload * other.payload, self.place)

    def __sub__(self, other: "ValuedElement"):
        self._check(other)
        return ValuedElement(self.payload - other.payload, self.place)
