"""Vectorized exact box scans for integral points on Markoff-type surfaces.

For fixed ``(x, y)`` the surface equation is a monic quadratic in ``z``, so a
scan over a box of side ``2H+1`` costs ``O(H^2)`` integer-square-root tests.
Rows are independent and may be handed to worker processes; results are
always merged and sorted before they are returned.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

_INT64_SAFE = 2**62

WORKERS_ENV = "MARKOFF_ARITH_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _isqrt_exact(disc: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Integer square roots of nonnegative int64 entries and a perfect-square mask."""
    r = np.floor(np.sqrt(disc.astype(np.float64))).astype(np.int64)
    for _ in range(2):
        r = np.where(r * r > disc, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= disc, r + 1, r)
    return r, r * r == disc


def solve_last(eps, a, b, c, d, x: int, ys: np.ndarray, H: int) -> list[tuple[int, int, int]]:
    """All integral ``z`` with ``|z| <= H`` on the surface, for fixed ``x`` and each ``y``.

    Coefficient roles: ``a`` multiplies the fixed variable, ``b`` the scanned
    one, ``c`` the solved one.
    """
    if len(ys) == 0:
        return []
    ymax = int(np.abs(ys).max())
    bmax = abs(x) * ymax + abs(c)
    cmax = x * x + ymax * ymax + abs(a * x) + abs(b) * ymax + abs(d)
    if bmax * bmax + 4 * cmax >= _INT64_SAFE:
        return _solve_last_py(eps, a, b, c, d, x, [int(v) for v in ys], H)
    B = eps * x * ys - c
    C = x * x + ys * ys - a * x - b * ys - d
    disc = B * B - 4 * C
    keep = disc >= 0
    if not keep.any():
        return []
    ys_k, B_k, disc_k = ys[keep], B[keep], disc[keep]
    r, square = _isqrt_exact(disc_k)
    ys_k, B_k, r = ys_k[square], B_k[square], r[square]
    out = []
    for sign in (1, -1):
        num = -B_k + sign * r
        even = num % 2 == 0
        z = num[even] // 2
        yy = ys_k[even]
        inside = np.abs(z) <= H
        out.extend(zip([x] * int(inside.sum()), yy[inside].tolist(), z[inside].tolist()))
    return sorted(set(out))


def _solve_last_py(eps, a, b, c, d, x, ys, H):
    out = set()
    for y in ys:
        B = eps * x * y - c
        C = x * x + y * y - a * x - b * y - d
        disc = B * B - 4 * C
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for num in (-B + r, -B - r):
            if num % 2 == 0 and abs(num // 2) <= H:
                out.add((x, y, num // 2))
    return sorted(out)


def _rows(args):
    eps, a, b, c, d, H, xs = args
    ys = np.arange(-H, H + 1, dtype=np.int64)
    out = []
    for x in xs:
        out.extend(solve_last(eps, a, b, c, d, x, ys, H))
    return out


def box_points(eps: int, a: int, b: int, c: int, d: int, H: int,
               workers: int | None = None) -> list[tuple[int, int, int]]:
    """Every integral point of ``x^2+y^2+z^2+eps*xyz = ax+by+cz+d`` with max-norm <= H."""
    if H < 0:
        return []
    workers = workers or default_workers()
    xs = list(range(-H, H + 1))
    if workers <= 1 or len(xs) < 64:
        pts = _rows((eps, a, b, c, d, H, xs))
    else:
        chunks = [xs[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_rows, [(eps, a, b, c, d, H, ch) for ch in chunks])
            pts = [p for part in parts for p in part]
    return sorted(set(pts))


def fixed_coordinate_points(eps: int, a: int, b: int, c: int, d: int, axis: str,
                            t: int, H: int) -> list[tuple[int, int, int]]:
    """Integral points with coordinate ``axis`` equal to ``t`` and max-norm <= H."""
    ys = np.arange(-H, H + 1, dtype=np.int64)
    if axis == "x":
        return solve_last(eps, a, b, c, d, t, ys, H)
    if axis == "y":
        # fixed y, scan x, solve z
        raw = solve_last(eps, b, a, c, d, t, ys, H)
        return sorted((x, y, z) for (y, x, z) in raw)
    if axis == "z":
        # fixed z, scan x, solve y
        raw = solve_last(eps, c, a, b, d, t, ys, H)
        return sorted((x, y, z) for (z, x, y) in raw)
    raise ValueError(f"unknown axis {axis!r}")
