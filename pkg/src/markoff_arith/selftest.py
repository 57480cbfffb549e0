"""Quick randomized invariant suites behind ``markoff-arith selftest``."""
from __future__ import annotations

import random
from fractions import Fraction

from . import slopes_trees as st
from .exactnum import PAdic
from .mpoly import MPoly
from .surface import (
    MarkoffSurface,
    Raw,
    descend,
    evaluate,
    norm,
    vieta_move,
)


def random_surface_with_point(rng: random.Random, span: int = 6):
    """A random surface through a random integer point (``d`` is solved for)."""
    eps = rng.choice((1, -1))
    a, b, c = (rng.randint(-span, span) for _ in range(3))
    p = tuple(rng.randint(-span, span) for _ in range(3))
    x, y, z = p
    d = x * x + y * y + z * z + eps * x * y * z - a * x - b * y - c * z
    return MarkoffSurface(eps, a, b, c, d, Raw()), p


def random_walk(s, p, rng: random.Random, length: int):
    for _ in range(length):
        p = vieta_move(s, rng.choice("xyz"), p)
    return p


def _suite_moves(rng, rounds):
    bad = 0
    for _ in range(rounds):
        s, p = random_surface_with_point(rng)
        p = random_walk(s, p, rng, rng.randint(0, 8))
        for axis in "xyz":
            q = vieta_move(s, axis, p)
            if evaluate(s, q) != 0 or vieta_move(s, axis, q) != tuple(p):
                bad += 1
    return bad


def _suite_descent(rng, rounds):
    bad = 0
    for _ in range(rounds):
        s, p = random_surface_with_point(rng)
        p = random_walk(s, p, rng, rng.randint(0, 8))
        q, word = descend(s, p)
        cur, last = p, norm(p)
        for axis in word:
            cur = vieta_move(s, axis, cur)
            if norm(cur) >= last:
                bad += 1
            last = norm(cur)
        if tuple(cur) != tuple(q) or descend(s, q)[1]:
            bad += 1
    return bad


def _suite_fricke(depth=4):
    x, y, z = (MPoly.var(("x", "y", "z"), v) for v in "xyz")
    kappa = x * x + y * y + z * z - x * y * z - 2
    bad = 0
    for u, v, w in st.farey_triangles(depth):
        a, b, c = (st.trace_polynomial(sl) for sl in (u, v, w))
        if a * a + b * b + c * c - a * b * c - 2 != kappa:
            bad += 1
    return bad


def _random_sl2(rng, span=5):
    while True:
        a, b, c = (rng.randint(-span, span) for _ in range(3))
        if a != 0 and (b * c + 1) % a == 0:
            return ((a, b), (c, (b * c + 1) // a))


def _suite_tree(rng, rounds):
    bad = 0
    for _ in range(rounds):
        p = rng.choice((2, 3, 5))
        e = rng.randint(-3, 3)
        lam = Fraction(p) ** e * rng.choice((1, 3, 7))
        g = ((lam, Fraction(rng.randint(-4, 4))), (Fraction(0), 1 / lam))
        h = _random_sl2(rng)
        conj = st.mat_mul(st.mat_mul(h, g), st.mat_inv_sl2(h))
        tr = st.mat_trace(g)
        length = st.translation_length(g, PAdic(p))
        integral = tr == 0 or st.valuation(tr, PAdic(p)) >= 0
        if (length == 0) != integral or st.translation_length(conj, PAdic(p)) != length:
            bad += 1
    return bad


def _suite_words(rng, rounds):
    bad = 0
    for _ in range(rounds):
        A, B = _random_sl2(rng), _random_sl2(rng)
        triple = st.traces_of_rep(A, B)
        for sl in st.slopes_up_to(4):
            if st.trace_of_slope(sl, triple) != st.mat_trace(st.word_matrix(st.christoffel_word(sl), A, B)):
                bad += 1
    return bad


def run_selftest(seed: int = 0, rounds: int = 200) -> dict:
    rng = random.Random(seed)
    suites = {
        "vieta_involution": _suite_moves(rng, rounds),
        "descent_monotone": _suite_descent(rng, rounds),
        "fricke_identity": _suite_fricke(),
        "translation_length": _suite_tree(rng, rounds),
        "trace_vs_matrix": _suite_words(rng, max(1, rounds // 10)),
    }
    return {"passed": not any(suites.values()), "seed": seed, "rounds": rounds,
            "failures": suites}
