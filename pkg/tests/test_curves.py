from fractions import Fraction

import pytest

from markoff_arith.curves import (
    classify_curve,
    corollary5_solve,
    implicit_curve,
    implicit_points,
    infinity_witnesses,
    parametrized_curve,
    solve_curve_integral,
    solve_nonintegrable,
)
from markoff_arith.errors import PreconditionError
from markoff_arith.exactnum import INFINITY, Poly, RatFunc, place_valuation
from markoff_arith.fibers import fiber_integral_points, parametrize_parabolic_fiber, reachable_from
from markoff_arith.slopes_trees import Slope, trace_of_slope
from markoff_arith.surface import evaluate_coeffs, from_sphere, from_torus, move_coeffs, trace_chart

T = RatFunc.T()
M = from_torus(-2)
SPHERE0 = from_sphere(0, 0, 0, 0)


def fiber_curve_t3():
    # lines through (3, 3) on y^2 - 3yz + z^2 + 9 = 0, slope T
    s = 3 * (1 + T) / (T * T - 3 * T + 1)
    return parametrized_curve(M, (RatFunc(3), 3 + s, 3 + T * s))


def antidiagonal_curve():
    x = (T * T + 8) / (2 * T)
    return parametrized_curve(M, (x, -x, 2 + 16 / (T * T)), chart="canonical")


def sphere_box_oracle(H):
    # 2x^2 + z^2 - x^2 z = 4 on y = -x
    return sorted((x, -x, z) for x in range(-H, H + 1) for z in range(-H, H + 1)
                  if 2 * x * x + z * z - x * x * z == 4)


def test_curve_validation():
    with pytest.raises(PreconditionError):
        parametrized_curve(M, (RatFunc(3), T, T))
    with pytest.raises(PreconditionError, match="multiple"):
        implicit_curve(M, ["2*(x^2+y^2+z^2+x*y*z)"])


def test_classify_fiber_family():
    cls = classify_curve(fiber_curve_t3())
    assert (cls.status, cls.label, cls.value) == ("integrable", Slope(1, 0), 3)


def test_classify_parabolic_family():
    fam = parametrize_parabolic_fiber(from_torus(2), "x", 2)
    cls = classify_curve(parametrized_curve(from_torus(2), fam.coords))
    assert cls.status == "integrable" and cls.axis == "x"


def test_classify_sphere_nonintegrable():
    cls = classify_curve(implicit_curve(SPHERE0, ["x+y"]))
    assert cls.status == "nonintegrable"
    # each coordinate has a witness pair of points with different values
    assert {w["trace"] for w in cls.witnesses} == {"x", "y", "z"}


def test_classify_implicit_integrable_via_sampling():
    # x + 3 = 0 in canonical coordinates is the trace fiber x = 3
    cls = classify_curve(implicit_curve(M, ["x+3"]))
    assert cls.status == "integrable" and cls.axis == "x" and cls.value == 3
    cls = classify_curve(implicit_curve(M, ["2*z - 12"]))
    assert cls.status == "integrable" and cls.axis == "z"


def test_undetermined():
    c = implicit_curve(M, ["x^2 - 7*y - 5"])
    cls = classify_curve(c)
    if cls.status == "undetermined":
        with pytest.raises(PreconditionError, match="undetermined"):
            solve_curve_integral(c, "Z", 50)
        assert corollary5_solve(M, ["x^2 - 7*y - 5"], 50).method == "box-search"


def test_infinity_witnesses_examples():
    ws = infinity_witnesses(fiber_curve_t3())
    assert all(w.label == Slope(1, 0) and w.value == 3 for w in ws)
    fam = parametrize_parabolic_fiber(from_torus(6), "x", 2)
    ws = infinity_witnesses(parametrized_curve(from_torus(6), fam.coords))
    assert [(str(w.label), w.value) for w in ws] == [("1/0", 2)]


def test_infinity_witnesses_generic():
    c = antidiagonal_curve()
    ws = infinity_witnesses(c)
    assert {str(w.place) for w in ws} == {"T=0", "T=oo"}
    triple = tuple(RatFunc(v) if not isinstance(v, RatFunc) else v for v in c.trace_shape().coords)
    for w in ws:
        assert w.label not in (Slope(1, 0), Slope(0, 1))
        f = trace_of_slope(w.label, triple)
        assert place_valuation(f, w.place) >= 0


def test_solve_fiber_curve():
    sol = solve_curve_integral(fiber_curve_t3(), "Z", 20)
    reps = [g["trace_rep"] for g in sol.orbit_generators]
    assert [3, 3, 3] in reps
    assert sol.certified


def test_fiber_orbits_regenerate_box():
    sol = solve_curve_integral(implicit_curve(M, ["x+3"]), "Z", 10_000)
    box = fiber_integral_points(M, "x", 3, 10_000).points
    reached = set()
    for g in sol.orbit_generators:
        reached |= set(reachable_from(M, "x", tuple(g["trace_rep"]), box, 40))
    assert reached == set(box)


def test_solve_sphere_box():
    sol = solve_curve_integral(implicit_curve(SPHERE0, ["x+y"]), "Z", 100)
    assert not sol.certified and sol.method == "box-search"
    assert sorted(map(tuple, sol.finite_points)) == sphere_box_oracle(100)


def test_solve_parabolic_family():
    fam = parametrize_parabolic_fiber(from_torus(2), "x", 2)
    sol = solve_curve_integral(parametrized_curve(from_torus(2), fam.coords), "Z", 50)
    assert sol.certified and sol.families and not sol.finite_points
    assert sol.families[0]["coords"] == ["2", "m", "m"]


def test_irrational_family_has_finite_points():
    fam = parametrize_parabolic_fiber(from_torus(7), "x", 3)
    sol = solve_curve_integral(parametrized_curve(from_torus(7), fam.coords), "Z", 50)
    assert sol.finite_points == [(3, 0, 0)] and sol.certified and not sol.families


def test_nonintegrable_certified_matches_box():
    c = antidiagonal_curve()
    sol = solve_nonintegrable(c)
    assert sol.certified
    expected = [(-3, 3, 3), (-3, 3, 6), (0, 0, 0), (3, -3, 3), (3, -3, 6)]
    assert [tuple(p) for p in sol.points_in_chart()] == expected


def test_nonintegrable_after_move():
    # apply m_x to the curve; the solutions move with it
    c = antidiagonal_curve()
    moved = move_coeffs(M.coefficients, "x", c.shape.coords)
    c2 = parametrized_curve(M, moved, chart="canonical")
    sol = solve_nonintegrable(c2)
    assert sol.certified
    box = implicit_points(M.coefficients, [implicit_curve(M, ["x + y*z - y"]).shape.constraints[0]], 2000)
    assert sorted(map(tuple, sol.points_in_chart())) == sorted(map(tuple, box))


def test_nonintegrable_preconditions():
    with pytest.raises(PreconditionError):
        solve_nonintegrable(implicit_curve(M, ["x+y"]))


def test_constraint_solve_examples():
    sol = corollary5_solve(M, [], 5)
    assert [tuple(p) for p in sol.finite_points] == [(-3, 3, 3), (0, 0, 0)]
    sol = corollary5_solve(M, ["x-3"], 100, chart="trace")
    assert [3, 3, 3] in [g["trace_rep"] for g in sol.orbit_generators]


def test_od_solve():
    c = implicit_curve(M, ["x+y"])
    sol = solve_curve_integral(c, 1, 3)
    for p in sol.finite_points:
        q = [v.to_quad() for v in p]
        # points are reported in trace coordinates, where the constraint is y - x
        assert c.trace_shape().constraints[0](*q) == 0
        assert evaluate_coeffs(trace_chart(M), p).to_quad() == 0
    assert sol.finite_points


def test_solutions_satisfy_equations():
    for s, g in [(M, "x+y"), (from_torus(3), "x-y"), (from_sphere(1, 1, 0, 2), "x-2*y")]:
        sol = corollary5_solve(s, [g], 200)
        c = implicit_curve(s, [g])
        for p in sol.points_in_chart():
            assert evaluate_coeffs(s.coefficients, p) == 0
            assert c.shape.constraints[0](*p) == 0


def test_polynomial_family_valuation_infinity():
    fam = parametrize_parabolic_fiber(from_torus(6), "x", 2)
    assert place_valuation(RatFunc(fam.coords[1]), INFINITY) == -1
    assert fam.coords[0] == Poly.const(Fraction(2))


def test_integer_roots_repeated():
    from markoff_arith.curves import _integer_roots
    # (w - 3)^3 (w + 5)
    cs = [-135, 108, -18, -4, 1]
    assert _integer_roots(cs, 10) == [-5, 3]
    assert _integer_roots(cs, 4) == [3]
    assert _integer_roots([0, 0], 4) is None
