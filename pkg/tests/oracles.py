"""Independent oracles shared by the tests.

The explicit low-order covariant formulas live here, transcribed term by
term with products kept in their printed order; the library itself only
ever computes them through the triangular elimination or the closed
Bell-polynomial formula, so these transcriptions stay an independent
cross-check.
"""

import random
from fractions import Fraction

from wilc.invariants import BinomialOperator
from wilc.rings.matrix import Mat
from wilc.rings.poly import Poly
from wilc.rings.ratfunc import RatFunc


def d(x, m=1):
    for _ in range(m):
        x = x.derive()
    return x


def printed_I2(a1, a2):
    return a2 - d(a1) - a1 * a1


def printed_I3(a1, a2, a3):
    return a3 - (a2 * a1).scale(3) - d(a1, 2) + (d(a1) * a1 - a1 * d(a1)).scale(2) + (a1 * a1 * a1).scale(2)


def printed_I4(a1, a2, a3, a4):
    a1p, a1pp, a1ppp = d(a1), d(a1, 2), d(a1, 3)
    return (
        a4
        - (a3 * a1).scale(4)
        + (a2 * a1 * a1).scale(6)
        - (a2 * a1p).scale(6)
        - a1ppp
        + (a1p * a1p).scale(3)
        + (a1pp * a1 - a1 * a1pp).scale(3)
        + (a1 * a1 * a1p - a1p * a1 * a1).scale(3)
        + (a1 * a1p * a1).scale(6)
        - (a1 * a1 * a1 * a1).scale(3)
    )


def printed_I5(a1, a2, a3, a4, a5):
    a1p, a1pp, a1ppp, a1pppp = d(a1), d(a1, 2), d(a1, 3), d(a1, 4)
    return (
        a5
        - (a4 * a1).scale(5)
        + (a3 * a1 * a1).scale(10)
        - (a3 * a1p).scale(10)
        - (a2 * a1pp).scale(10)
        + (a2 * a1 * a1p).scale(10)
        + (a2 * a1p * a1).scale(20)
        - (a2 * a1 * a1 * a1).scale(10)
        - a1pppp
        - (a1 * a1ppp).scale(4)
        + (a1ppp * a1).scale(4)
        + (a1p * a1pp).scale(4)
        + (a1pp * a1p).scale(6)
        + (a1 * a1 * a1pp).scale(4)
        - (a1pp * a1 * a1).scale(6)
        + (a1 * a1pp * a1).scale(12)
        + (a1 * a1p * a1p).scale(12)
        - (a1p * a1 * a1p).scale(4)
        - (a1p * a1p * a1).scale(8)
        - (a1 * a1 * a1 * a1p).scale(4)
        - (a1 * a1 * a1p * a1).scale(8)
        - (a1 * a1p * a1 * a1).scale(12)
        + (a1p * a1 * a1 * a1).scale(4)
        + (a1 * a1 * a1 * a1 * a1).scale(4)
    )


def printed_star_a2(a1, a2, u):
    return a2 - d(u) - u * a1 - a1 * u + u * u


def printed_star_a3(a1, a2, a3, u):
    up, upp = d(u), d(u, 2)
    a1p = d(a1)
    return (
        a3
        - (a2 * u).scale(3)
        - upp
        - (a1 * up).scale(2)
        - up * a1
        + up * u
        + (u * up).scale(2)
        + (a1 * a1 * u).scale(2)
        - u * a1 * a1
        + (a1p * u).scale(2)
        - (u * a1p).scale(2)
        - a1 * u * a1
        + a1 * u * u
        + u * a1 * u
        + u * u * a1
        - u * u * u
    )


def rand_poly(rng, deg=2, span=3):
    return Poly([Fraction(rng.randint(-span, span)) for _ in range(deg + 1)])


def rand_rf(rng, deg=2):
    return RatFunc(rand_poly(rng, deg))


def rand_matrf(rng, r=2, deg=1):
    return Mat([[rand_rf(rng, deg) for _ in range(r)] for _ in range(r)])


def rand_binomial_matrf(rng, n, r=2, deg=1):
    return BinomialOperator(n, [rand_matrf(rng, r, deg) for _ in range(n)])


def seeded(seed):
    return random.Random(seed)
