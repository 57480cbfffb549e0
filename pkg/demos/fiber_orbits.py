# The fiber x = 3 (trace coordinates) on the k = -2 torus surface
from markoff_arith import classify_fiber, fiber_conic, fiber_integral_points, from_torus
from markoff_arith.fibers import generator_step

s = from_torus(-2)
d = classify_fiber(s, "x", 3)
print(d.classification, d.lam)
print(fiber_conic(s, "x", 3))

rep = fiber_integral_points(s, "x", 3, 10**4)
print(len(rep.points), "points,", len(rep.orbits), "orbits, certified:", rep.certified)
for r, per in rep.orbits:
    print("  rep", tuple(r), "period", per)

# walk along one orbit: coordinates grow by about (3+sqrt 5)/2 per step
p = (3, 3, 3)
for _ in range(6):
    p = generator_step(s, "x", p)
    print(tuple(p))

# parabolic fibers carry polynomial families instead
from markoff_arith import parametrize_parabolic_fiber
fam = parametrize_parabolic_fiber(from_torus(7), "x", 3)
print([str(c) for c in fam.coords])
