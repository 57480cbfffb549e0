from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from markoff_arith.errors import PreconditionError
from markoff_arith.exactnum import (
    INFINITY,
    AtPoint,
    PAdic,
    Poly,
    QuadElt,
    QuadInt,
    RatFunc,
    ValuedElement,
    format_rational,
    padic_valuation,
    parse_rational,
    place_valuation,
    poly_gcd,
    poly_xgcd,
    quad_ring_membership,
    solve_lambda,
    squarefree_decompose,
    valuation,
)

T = RatFunc.T()
rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**12)
nonzero = rationals.filter(lambda q: q != 0)
# discriminants get factored by trial division, so keep them small
small_rationals = st.fractions(max_denominator=200).filter(lambda q: abs(q.numerator) < 10**4)
small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(Poly)


@pytest.mark.parametrize("r,p,v", [(12, 2, 2), (Fraction(5, 9), 3, -2), (1, 7, 0), (-48, 2, 4)])
def test_padic_examples(r, p, v):
    assert padic_valuation(r, p) == v


def test_padic_errors():
    with pytest.raises(PreconditionError, match="valuation of zero"):
        padic_valuation(0, 2)
    with pytest.raises(PreconditionError):
        padic_valuation(3, 4)


def test_place_valuation_examples():
    assert place_valuation(T * T + 1, INFINITY) == -2
    assert place_valuation(T ** 3 / (T - 1), AtPoint(Fraction(0))) == 3
    assert place_valuation(RatFunc(5), INFINITY) == 0
    assert place_valuation(1 / (T - 2) ** 2, AtPoint(Fraction(2))) == -2
    with pytest.raises(PreconditionError):
        place_valuation(RatFunc(0), INFINITY)


def test_quad_ring_membership_examples():
    assert quad_ring_membership(QuadElt(-1, 0, 1), 1)
    assert quad_ring_membership(QuadElt(-3, Fraction(1, 2), Fraction(1, 2)), 3)
    assert not quad_ring_membership(Fraction(1, 2), 1)
    assert not quad_ring_membership(QuadElt(-1, Fraction(1, 2), Fraction(1, 2)), 1)
    with pytest.raises(PreconditionError, match="not imaginary quadratic"):
        quad_ring_membership(QuadElt(5, 0, 1), 5)


def test_solve_lambda_examples():
    assert solve_lambda(3) == QuadElt(5, Fraction(3, 2), Fraction(1, 2))
    assert solve_lambda(2) == 1
    assert solve_lambda(-2) == -1
    assert solve_lambda(0) == QuadElt(-1, 0, 1)
    # t^2 - 4 a square: larger root
    assert solve_lambda(Fraction(5, 2)) == 2


@given(small_rationals)
def test_solve_lambda_identity(t):
    assume(t * t != 4)
    lam = solve_lambda(t)
    assert lam + 1 / lam == t
    if isinstance(lam, QuadElt):
        assert lam * lam.inverse() == 1


def test_squarefree_reduction():
    assert squarefree_decompose(12) == (2, 3)
    assert QuadElt.sqrt(12) == QuadElt(3, 0, 2)
    assert QuadElt.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(PreconditionError):
        QuadElt(8, 0, 1)


def test_quadint_half_basis():
    w = QuadInt(3, 1, 1)  # (1 + sqrt(-3))/2
    assert w.half_basis
    assert w * w * w == QuadInt.from_int(3, -1)
    assert QuadInt(1, 0, 1) * QuadInt(1, 0, 1) == QuadInt.from_int(1, -1)
    with pytest.raises(PreconditionError):
        QuadInt(3, 1, 0)


@given(nonzero, nonzero, st.sampled_from([2, 3, 5, 7]))
def test_valuation_axioms_padic(x, y, p):
    vx, vy = padic_valuation(x, p), padic_valuation(y, p)
    assert padic_valuation(x * y, p) == vx + vy
    if x + y != 0:
        v = padic_valuation(x + y, p)
        assert v >= min(vx, vy)
        if vx != vy:
            assert v == min(vx, vy)


@given(small_polys, small_polys, st.sampled_from([INFINITY, AtPoint(Fraction(0)), AtPoint(Fraction(1))]))
def test_valuation_axioms_function_field(f, g, place):
    assume(not f.is_zero() and not g.is_zero())
    F, G = RatFunc(f), RatFunc(g)
    assert place_valuation(F * G, place) == place_valuation(F, place) + place_valuation(G, place)
    if not (F + G).is_zero():
        assert place_valuation(F + G, place) >= min(place_valuation(F, place), place_valuation(G, place))


@given(rationals)
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


@given(st.integers(-50, 50).filter(lambda D: D not in (0, 1)), rationals, rationals)
def test_quadelt_roundtrip(D, r, s):
    assume(squarefree_decompose(D)[0] == 1)
    z = QuadElt(D, r, s)
    assert QuadElt.from_json(z.to_json()) == z


@given(st.sampled_from([1, 2, 3, 7, 11]), st.integers(-20, 20), st.integers(-20, 20))
def test_quadint_roundtrip(d, a, b):
    assume(d % 4 != 3 or (a - b) % 2 == 0)
    z = QuadInt(d, a, b)
    assert QuadInt.from_json(z.to_json()) == z
    assert QuadInt.from_quad(z.to_quad(), d) == z
    assert quad_ring_membership(z.to_quad(), d)


@given(small_polys, small_polys)
def test_ratfunc_canonical(f, g):
    assume(not g.is_zero())
    R = RatFunc(f, g)
    assert R.den.lead == 1
    assert RatFunc.from_json(R.to_json()) == R
    if not f.is_zero():
        assert poly_gcd(R.num, R.den).degree == 0


@given(small_polys, small_polys)
def test_xgcd(a, b):
    assume(not (a.is_zero() and b.is_zero()))
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    if not a.is_zero():
        assert (a % g).is_zero()


def test_zero_poly_degree_sentinel():
    assert Poly([0]).degree == float("-inf")


def test_valued_element():
    a = ValuedElement(Fraction(1, 4), PAdic(2))
    b = ValuedElement(Fraction(6), PAdic(2))
    assert (a * b).valuation() == -1
    assert valuation(T + 1 / T, INFINITY) == -1
    with pytest.raises(PreconditionError):
        a + ValuedElement(Fraction(1), PAdic(3))
