# Exponent lattice points (m, n) with f(x^m, y^n) = 0
from markoff_arith import LatticePointProblem, classify_dichotomy, multiplicative_dependence

print(multiplicative_dependence(4, 8))  # 4 = 2^2, 8 = 2^3

res = classify_dichotomy(LatticePointProblem.make("X - Y", 4, 8), 30)
print(res.tag, res.step, res.invariant_element)
print(res.solutions)

res = classify_dichotomy(LatticePointProblem.make("X + Y - 3", 2, 5), 50)
print(res.tag, res.solutions)

# 2X^2 = Y^3 meets the lattice along a progression
res = classify_dichotomy(LatticePointProblem.make("2*X^2 - Y^3", 2, 2), 40)
print(res.tag, res.subtorus.to_json() if res.subtorus else None, res.solutions[:4])
