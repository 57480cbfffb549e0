from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from markoff_arith.errors import PreconditionError
from markoff_arith.torus_lattice import (
    LatticePointProblem,
    classify_dichotomy,
    exponential_solutions,
    is_subtorus_translate,
    multiplicative_dependence,
    parse_xy,
    poly_from_json,
    poly_to_json,
    preserves_curve,
)


def sympy_solutions(f, x, y, M):
    X, Y = sp.symbols("X Y")
    expr = sp.sympify(f.replace("^", "**"))
    return [(m, n) for m in range(M + 1) for n in range(M + 1)
            if expr.subs({X: sp.Rational(x) ** m, Y: sp.Rational(y) ** n}) == 0]


def test_validation():
    with pytest.raises(PreconditionError):
        LatticePointProblem.make("X - Y", 1, 2)
    with pytest.raises(PreconditionError):
        LatticePointProblem.make("X - Y", 0, 2)
    with pytest.raises(PreconditionError, match="divisible"):
        LatticePointProblem.make("X*Y - X", 2, 3)
    with pytest.raises(PreconditionError):
        LatticePointProblem.make("0", 2, 3)


def test_json_roundtrip():
    f = parse_xy("2*X^2 - Y^3 + 7/3")
    assert poly_from_json(poly_to_json(f)) == f


def test_dependence():
    assert multiplicative_dependence(4, 8) == (2, 2, 3)
    assert multiplicative_dependence(2, 3) is None
    assert multiplicative_dependence(Fraction(9, 4), Fraction(3, 2)) == (Fraction(3, 2), 2, 1)


def test_subtorus_examples():
    sub = is_subtorus_translate(parse_xy("2*X^2 - Y^3"))
    assert (sub.d, sub.e, sub.beta) == (2, 3, Fraction(1, 2))
    T = Fraction(5, 7)
    u, v = sub.parametrize(T)
    assert 2 * u ** 2 == v ** 3
    assert is_subtorus_translate(parse_xy("X + Y - 3")) is None
    # same-sign exponent difference is not a subtorus translate
    assert is_subtorus_translate(parse_xy("X*Y - 6")) is None
    with pytest.raises(PreconditionError, match="reducible"):
        is_subtorus_translate(parse_xy("X^2 - Y^2"))


def test_dichotomy_subtorus():
    res = classify_dichotomy(LatticePointProblem.make("X - Y", 4, 8), 20)
    assert res.tag == "subtorus-translate"
    assert res.step == (3, 2) and res.invariant_element == (64, 64)
    assert res.solutions == [(3 * k, 2 * k) for k in range(7)]
    js = res.to_json()
    assert js["dependence"] == {"v": "2", "a": 2, "b": 3}


def test_dichotomy_finite():
    res = classify_dichotomy(LatticePointProblem.make("X + Y - 3", 2, 5), 50)
    assert res.tag == "finite" and res.solutions == [(1, 0)]
    assert res.to_json()["completeness"] == "complete within the bound only"
    res = classify_dichotomy(LatticePointProblem.make("X - Y", 2, 3), 30)
    assert res.tag == "finite" and res.solutions == [(0, 0)]


def test_dichotomy_opposite_sides():
    # |x| > 1 > |y|: X = Y forces m = n = 0
    res = classify_dichotomy(LatticePointProblem.make("X - Y", 2, Fraction(1, 2)), 20)
    assert res.tag == "finite" and res.solutions == [(0, 0)]


def test_dichotomy_sign():
    # y negative: only even n can match x^m > 0
    res = classify_dichotomy(LatticePointProblem.make("X - Y", 4, -2), 12)
    assert res.solutions == [(k, 2 * k) for k in range(7)]
    assert res.tag == "subtorus-translate"
    assert preserves_curve(parse_xy("X - Y"), res.invariant_element)


@pytest.mark.parametrize("f,x,y", [
    ("X - Y", 4, 8),
    ("2*X^2 - Y^3", 2, 2),
    ("X + Y - 3", 2, 5),
    ("X^2 + Y - 17", 2, 13),
    ("X - 9*Y", 3, Fraction(1, 3)),
])
def test_solutions_match_independent_route(f, x, y):
    prob = LatticePointProblem.make(f, x, y)
    assert exponential_solutions(prob, 12) == sympy_solutions(f, x, y, 12)


bases = st.sampled_from([2, 3, 4, 5, 6, 8, 9, Fraction(1, 2), Fraction(3, 2), -2, -3])


@settings(max_examples=40)
@given(bases, bases, st.integers(0, 4), st.integers(0, 4))
def test_progression_law(x, y, m0, n0):
    # a curve through (x^m0, y^n0) of the form X^d = beta*Y^e
    f = LatticePointProblem.make(_line_through(x, y, m0, n0), x, y)
    res = classify_dichotomy(f, 14)
    assert (m0, n0) in res.solutions
    if res.tag == "subtorus-translate":
        sm, sn = res.step
        for m, n in res.solutions:
            if m + sm <= 14 and n + sn <= 14:
                assert (m + sm, n + sn) in res.solutions
        assert preserves_curve(f.f, res.invariant_element)
    elif multiplicative_dependence(abs(Fraction(x)) if abs(x) > 1 else 1 / abs(Fraction(x)),
                                   abs(Fraction(y)) if abs(y) > 1 else 1 / abs(Fraction(y))) is None:
        # independent bases: the line meets the lattice once
        assert res.solutions == [(m0, n0)]


def _line_through(x, y, m0, n0):
    from markoff_arith.mpoly import MPoly
    X, Y = MPoly.var(("X", "Y"), "X"), MPoly.var(("X", "Y"), "Y")
    return X - Fraction(x) ** m0 / Fraction(y) ** n0 * Y


@settings(max_examples=30)
@given(bases, bases, st.integers(0, 10))
def test_monotone_in_bound(x, y, M):
    prob = LatticePointProblem.make(_line_through(x, y, 1, 1), x, y)
    small = exponential_solutions(prob, M)
    big = exponential_solutions(prob, M + 3)
    assert set(small) <= set(big)
    assert [s for s in big if max(s) <= M] == small


@settings(max_examples=30)
@given(st.integers(1, 5), st.integers(1, 5), st.fractions(min_value=-5, max_value=5).filter(lambda v: v != 0),
       st.fractions(min_value=-4, max_value=4).filter(lambda v: v != 0))
def test_parametrization_identity(d, e, beta, T):
    from math import gcd
    if gcd(d, e) != 1:
        return
    from markoff_arith.mpoly import MPoly
    X, Y = MPoly.var(("X", "Y"), "X"), MPoly.var(("X", "Y"), "Y")
    f = X ** d - beta * Y ** e
    try:
        sub = is_subtorus_translate(f)
    except PreconditionError:
        return  # reducible over Q
    assert sub is not None
    u, v = sub.parametrize(T)
    assert f(u, v) == 0
