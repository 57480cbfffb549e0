"""Brute-force oracles, frozen from ``generate.py`` before the solvers were written."""

# x^2 + y^2 + z^2 = 3xyz, 1 <= x <= y <= z <= 1000
MARKOFF_TRIPLES_1000 = [(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (1, 13, 34), (1, 34, 89), (1, 89, 233), (1, 233, 610), (2, 5, 29), (2, 29, 169), (2, 169, 985), (5, 13, 194), (5, 29, 433)]

MARKOFF_NUMBERS_1000 = [1, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]

# x^2 + y^2 + z^2 + xyz = 0 and x + y = 0, max |coord| <= 10^4
ANTIDIAGONAL_H10000 = [(-3, 3, 3), (-3, 3, 6), (0, 0, 0), (3, -3, 3), (3, -3, 6)]
