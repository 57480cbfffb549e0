"""Regenerate the frozen brute-force oracles in ``frozen.py``.

Uses only the standard library; nothing from the package is imported.
"""
from math import isqrt


def markoff_triples(bound):
    # x^2 + y^2 + z^2 = 3xyz with 1 <= x <= y <= z <= bound, solving for z
    out = []
    for x in range(1, bound + 1):
        for y in range(x, bound + 1):
            b = 3 * x * y
            disc = b * b - 4 * (x * x + y * y)
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc:
                continue
            for z in {(b - r) // 2, (b + r) // 2}:
                if (b - r) % 2 == 0 and y <= z <= bound:
                    out.append((x, y, z))
    return sorted(set(out))


def antidiagonal_points(H):
    # x^2 + y^2 + z^2 + xyz = 0 with y = -x, so z^2 - x^2 z + 2x^2 = 0;
    # z divides 2x^2, so loop over divisors instead of the whole box
    pts = set()
    for x in range(-H, H + 1):
        n = 2 * x * x
        if n == 0:
            pts.add((0, 0, 0))
            continue
        for z in range(1, isqrt(n) + 1):
            if n % z:
                continue
            for zz in (z, n // z):
                if abs(zz) <= H and zz * zz - x * x * zz + n == 0:
                    pts.add((x, -x, zz))
    return sorted(pts)


if __name__ == "__main__":
    t = markoff_triples(1000)
    print("MARKOFF_TRIPLES_1000 =", t)
    print("MARKOFF_NUMBERS_1000 =", sorted({v for p in t for v in p}))
    print("ANTIDIAGONAL_H10000 =", antidiagonal_points(10_000))
