"""Seeded random generators for property tests."""

import itertools
import random
from fractions import Fraction

from hhgabber.polyarith import Polynomial, PolyRing, cotangent_ring
from hhgabber.weylalg import WeylOperator

COEFFS = [Fraction(k) for k in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-2, 3)]


def random_poly(rng: random.Random, ring: PolyRing, max_deg=4, max_terms=4, allow_zero=True):
    n = ring.arity
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        deg = rng.randint(0, max_deg)
        e = [0] * n
        for _ in range(deg):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rng.choice(COEFFS)
    p = Polynomial(ring, terms)
    if not allow_zero and not p:
        return ring.gen(rng.randrange(n))
    return p


def random_operator(rng: random.Random, n: int, max_deg=3, max_terms=3, nonzero=True):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_deg)
        e = [0] * (2 * n)
        for _ in range(deg):
            e[rng.randrange(2 * n)] += 1
        terms[tuple(e)] = rng.choice(COEFFS)
    op = WeylOperator(n, terms)
    if nonzero and not op:
        return WeylOperator.d(n, 0)
    return op


def small_rings():
    return [
        PolyRing(("x",)),
        PolyRing(("x", "y")),
        PolyRing(("x", "y", "z")),
        PolyRing(("a", "b", "c", "d")),
        cotangent_ring(1, ["x"]),
        cotangent_ring(2),
    ]


def monomials_up_to(n, deg):
    out = []
    for d in range(deg + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out
