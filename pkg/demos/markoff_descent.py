# Markoff triples as integral points on x^2+y^2+z^2+xyz = 0, via descent
from markoff_arith import from_torus, descend, enumerate_minimal, vieta_move
from markoff_arith.scan import box_points

s = from_torus(-2)
print(s)

# every nonzero point descends to (-3, 3, 3)
p = (-15, 3, 39)
q, word = descend(s, p)
print(p, "->", q, "via", "".join(word))

# climb back up with random moves
cur = q
for axis in "xyzxy":
    cur = vieta_move(s, axis, cur)
    print(axis, cur)

# minimal points in a box, and the raw box count for comparison
print(enumerate_minimal(s, 500))
pts = box_points(1, 0, 0, 0, 0, 500)
print(len(pts), "points with max |coord| <= 500")

# divide by 3 to get Markoff numbers
print(sorted({abs(v) // 3 for p in pts for v in p if v}))
