from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markoff_arith.errors import PreconditionError
from markoff_arith.exactnum import Poly, QuadElt, QuadInt, solve_lambda
from markoff_arith.fibers import (
    classify_fiber,
    conjugation_holds,
    degenerate_constant,
    fiber_conic,
    fiber_generator_apply,
    fiber_integral_points,
    fiber_parametrization,
    is_reducible_triple,
    parametrize_parabolic_fiber,
    points_over_Od,
    reachable_from,
    verify_family,
)
from markoff_arith.mpoly import MPoly
from markoff_arith.surface import evaluate_coeffs, from_sphere, from_torus, raw, trace_chart

M = from_torus(-2)
t_sym = MPoly.var(("t",), "t")


def test_reducible_triple():
    assert is_reducible_triple(2, 2, 2)
    assert not is_reducible_triple(0, 0, 0)
    assert is_reducible_triple(t_sym, t_sym, t_sym * t_sym - 2)


@pytest.mark.parametrize("s,t,cls,reason", [
    (from_torus(7), 3, "parabolic", "reducible-factor"),
    (from_torus(0), 2, "parabolic", "t=+-2"),
    (from_torus(0), 3, "perfect", None),
    (from_torus(2), 2, "parabolic", "t=+-2"),
    (from_torus(2), 0, "perfect", None),  # k = 2 is exempt from the factor test
    (from_sphere(0, 0, 0, 0), 3, "perfect", None),
    (from_sphere(0, 0, 0, 0), -2, "parabolic", "t=+-2"),
])
def test_classify_examples(s, t, cls, reason):
    d = classify_fiber(s, "x", t)
    assert (d.classification, d.reason) == (cls, reason)


def test_classify_raw_error():
    with pytest.raises(PreconditionError, match="no moduli"):
        classify_fiber(raw(1, 1, 0, 0, 0), "x", 3)


def test_conic_examples():
    c = fiber_conic(M, "x", 3)
    assert str(c) == "y^2 - 3*y*z + z^2 + 9 = 0"
    assert c(3, 3) == 0
    assert str(fiber_conic(from_torus(5), "x", 0)) == "y^2 + z^2 - 7 = 0"
    assert str(fiber_conic(from_sphere(0, 0, 0, 0), "x", 0)) == "y^2 + z^2 - 4 = 0"


def test_sphere_conic_determinant_factors():
    # determinant of the (x = t) conic is -(1/4) times the product of the two boundary factors
    for ks in product(range(-2, 3), repeat=4):
        s = from_sphere(*ks)
        k1, k2, k3, k4 = ks
        for t in range(-4, 5):
            f1 = k1 ** 2 - k1 * k2 * t + k2 ** 2 + t * t - 4
            f2 = k3 ** 2 - k3 * k4 * t + k4 ** 2 + t * t - 4
            assert fiber_conic(s, "x", t).determinant() == Fraction(-1, 4) * f1 * f2


def test_generator_examples():
    p = (3, 3, 3)
    assert fiber_generator_apply(M.__class__(-1, 0, 0, 0, 0), "x", p, 0) == p
    assert fiber_generator_apply(M, "x", p, 1) == (3, 3, 6)
    assert fiber_generator_apply(M, "x", p, 2) == (3, 6, 15)
    q = fiber_generator_apply(M, "x", p, 7)
    assert fiber_generator_apply(M, "x", q, -7) == p
    with pytest.raises(PreconditionError):
        fiber_generator_apply(M, "x", (3, 3, 4), 1)


@given(st.integers(-8, 8), st.integers(-20, 20))
def test_generator_preserves_fiber(n, m):
    p = fiber_generator_apply(M, "x", (3, 3, 3), m)
    q = fiber_generator_apply(M, "x", p, n)
    assert q[0] == 3 and evaluate_coeffs(trace_chart(M), q) == 0
    assert fiber_generator_apply(M, "x", q, -n) == p


def test_sphere_generator_preserves_fiber():
    s = from_sphere(-2, -2, -1, 0)
    pts = fiber_integral_points(s, "y", 3, 50).points
    assert pts
    for p in pts[:5]:
        for n in (-3, 1, 4):
            q = fiber_generator_apply(s, "y", p, n)
            assert q[1] == 3 and evaluate_coeffs(trace_chart(s), q) == 0


def test_fiber_parametrization_t3():
    par = fiber_parametrization(M, "x", 3)
    assert par.lam == QuadElt(5, Fraction(3, 2), Fraction(1, 2))
    assert par.K == -9
    u = par.inverse((3, 3, 3))
    assert par.evaluate(u) == (3, 3, 3)
    assert par.evaluate(u * par.lam ** par.exponent) == (3, 3, 6)
    assert par.exponent in (1, 2, -1, -2)


def test_fiber_parametrization_t0():
    par = fiber_parametrization(from_torus(0), "x", 0)
    assert par.lam == QuadElt(-1, 0, 1) and par.K == 2
    assert conjugation_holds(from_torus(0), par, QuadElt(-1, 1, 1))


def test_fiber_parametrization_errors():
    with pytest.raises(PreconditionError):
        fiber_parametrization(M, "x", 2)
    with pytest.raises(PreconditionError):
        fiber_parametrization(from_torus(7), "x", 3)


@pytest.mark.parametrize("k,t,family", [
    (2, 2, ["2", "T", "T"]),
    (6, 2, ["2", "T + 2", "T"]),
    (7, 3, ["3", "(3/2+1/2*sqrt(5))*T", "T"]),
    (6, -2, ["-2", "-T + 2", "T"]),
])
def test_parabolic_examples(k, t, family):
    f = parametrize_parabolic_fiber(from_torus(k), "x", t)
    assert [str(c) for c in f.coords] == family
    assert verify_family(from_torus(k), f)


def test_parabolic_lambda_line():
    f = parametrize_parabolic_fiber(from_torus(7), "x", 3)
    assert f.coords[1] == solve_lambda(3) * Poly.T()
    with pytest.raises(PreconditionError):
        parametrize_parabolic_fiber(M, "x", 3)


def test_fiber_points_examples():
    rep = fiber_integral_points(M, "x", 3, 20)
    assert (3, 3, 3) in rep.points and (3, 3, 6) in rep.points and (3, 6, 15) in rep.points
    assert rep.orbits[0][0] == (3, 3, 3) and rep.certified
    fin = fiber_integral_points(from_torus(0), "x", 0, 10)
    assert sorted(p[1:] for p in fin.points) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert fin.certified
    assert fiber_integral_points(M, "x", 0, 10).points == [(0, 0, 0)]


def test_fiber_orbits_cover_box():
    # every box point is reached from its orbit representative
    for k, t in [(-2, 3), (-2, 4), (1, 5), (3, -3), (-5, 6)]:
        s = from_torus(k)
        rep = fiber_integral_points(s, "x", t, 3000)
        for r, per in rep.orbits:
            reach = reachable_from(s, "x", r, rep.points, 60)
            assert r in reach
        total = set()
        for r, _ in rep.orbits:
            total |= set(reachable_from(s, "x", r, rep.points, 60))
        assert total == set(rep.points)


def test_points_over_od():
    pts = points_over_Od(M, 1, 2)
    assert all(evaluate_coeffs(M.coefficients, p) == QuadInt.from_int(1, 0) for p in pts)
    # (0, i, 1): 0 - 1 + 1 + 0 = 0, found up to symmetry and conjugation
    assert any(sorted((v.a, v.b) for v in p) == [(0, 0), (0, 1), (1, 0)] for p in pts)
    with pytest.raises(PreconditionError):
        points_over_Od(M, 4, 2)


def test_degenerate_constant():
    assert degenerate_constant(M, "x", 3) == -9
    assert degenerate_constant(from_torus(7), "x", 3) == 0
