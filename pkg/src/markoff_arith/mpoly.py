"""Sparse multivariate polynomials with rational coefficients.

Used for trace polynomials in ``(x, y, z)``, constraint equations, and the
two-variable curves of the torus-lattice module.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import PreconditionError


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple[int, ...], object] | None = None):
        vs = tuple(vars)
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != len(vs):
                raise PreconditionError("monomial arity does not match variables")
            c = Fraction(c)
            if c != 0:
                clean[tuple(mono)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def const(cls, vars, c) -> "MPoly":
        vs = tuple(vars)
        return cls(vs, {(0,) * len(vs): c})

    @classmethod
    def var(cls, vars, name: str) -> "MPoly":
        vs = tuple(vars)
        mono = tuple(1 if v == name else 0 for v in vs)
        if sum(mono) != 1:
            raise PreconditionError(f"unknown variable {name!r}")
        return cls(vs, {mono: 1})

    @classmethod
    def parse(cls, text: str, vars=("x", "y", "z")) -> "MPoly":
        """Parse ``"x^2 + 3*y*z - 1"`` or an equation ``"lhs = rhs"``."""
        vs = tuple(vars)
        text = text.replace("^", "**")
        if text.count("=") > 1:
            raise PreconditionError(f"malformed polynomial {text!r}")
        if "=" in text:
            lhs, rhs = text.split("=")
            return cls.parse(lhs, vs) - cls.parse(rhs, vs)
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise PreconditionError(f"malformed polynomial {text!r}") from exc
        return _from_ast(tree.body, vs)

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set[str]:
        return {v for i, v in enumerate(self.vars) if any(m[i] for m in self.terms)}

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient_of(self, name: str, power: int) -> "MPoly":
        """Coefficient of ``name**power`` viewed as a polynomial in the others."""
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i] == power:
                mm = list(m)
                mm[i] = 0
                out[tuple(mm)] = c
        return MPoly(self.vars, out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise PreconditionError("variable sets differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {m: -c for m, c in self.terms.items()})

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
        left, right = self.terms, o.terms
        if all(c.denominator == 1 for c in left.values()) and all(c.denominator == 1 for c in right.values()):
            # integer coefficients: plain ints are much cheaper than Fractions
            left = {m: c.numerator for m, c in left.items()}
            right = {m: c.numerator for m, c in right.items()}
        out: dict = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (MPoly, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- evaluation -------------------------------------------------------
    def __call__(self, *values):
        """Substitute ring elements (ints, Fractions, QuadElts, Polys, ...)."""
        if len(values) == 1 and isinstance(values[0], (tuple, list)):
            values = tuple(values[0])
        if len(values) != len(self.vars):
            raise PreconditionError("wrong number of values")
        powers: list[dict[int, object]] = [{0: 1} for _ in values]
        acc = 0
        for m, c in self.terms.items():
            term = c.numerator if c.denominator == 1 else c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = values[i] ** e
                    term = term * cache[e]
            acc = acc + term
        return acc

    def substitute(self, mapping: Mapping[str, "MPoly"]) -> "MPoly":
        vals = [mapping.get(v, MPoly.var(self.vars, v)) for v in self.vars]
        return self(*vals)

    # -- text -------------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), tuple(-e for e in m))):
            c = self.terms[m]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MPoly({self.vars}, {str(self)!r})"

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "exps": list(m)}
            for m, c in sorted(self.terms.items())
        ]


def _from_ast(node, vs) -> MPoly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MPoly.const(vs, node.value)
    if isinstance(node, ast.Name):
        if node.id not in vs:
            raise PreconditionError(f"unknown variable {node.id!r}")
        return MPoly.var(vs, node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_ast(node.operand, vs)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        left = _from_ast(node.left, vs)
        if isinstance(node.op, ast.Pow):
            right = _from_ast(node.right, vs)
            if not right.is_constant() or right.constant_term().denominator != 1 or right.constant_term() < 0:
                raise PreconditionError("exponents must be nonnegative integers")
            return left ** int(right.constant_term())
        right = _from_ast(node.right, vs)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.constant_term() == 0:
                raise PreconditionError("only division by nonzero constants is allowed")
            return left * MPoly.const(vs, 1 / right.constant_term())
    raise PreconditionError(f"unsupported syntax in polynomial: {ast.dump(node)}")
