import random
from fractions import Fraction

import pytest

from hhgabber.errors import ParseError, ZeroPolynomialError
from hhgabber.idealkit import groebner_basis, ideal_membership
from hhgabber.poissoncalc import bracket_eval, canonical_symplectic, is_involutive
from hhgabber.polyarith import PolyRing, cotangent_ring, parse_polynomial, poly_diff
from hhgabber.weylalg import (
    DModulePresentation,
    WeylOperator,
    characteristic_basis,
    characteristic_ideal,
    commutator,
    homogeneous_symbol,
    is_weyl_groebner,
    op_order,
    parse_operator,
    principal_symbol,
    weyl_groebner,
    weyl_mul,
    weyl_normal_form,
    weyl_order,
)

from gen import random_operator, random_poly


def D(text, n=1):
    return parse_operator(text, n)


def apply(op, f):
    """Independent oracle: act on a polynomial by multiplication and differentiation."""
    n = op.n
    out = f.ring.zero()
    for m, c in op.items():
        g = f
        for i in range(n):
            for _ in range(m[n + i]):
                g = poly_diff(g, i)
        out = out + g.mul_monomial(m[:n] + (0,) * (f.ring.arity - n), c)
    return out


def test_mul_examples():
    assert D("d1") * D("x1") == D("x1*d1") + 1
    assert D("x1") * D("d1") == D("x1*d1")
    assert weyl_mul(D("d1^2"), D("x1")) == D("x1*d1^2") + D("2*d1")


def test_mul_against_action_oracle():
    rng = random.Random(4)
    for n in (1, 2):
        ring = PolyRing(tuple(f"x{i + 1}" for i in range(n)))
        for _ in range(40):
            P, Q = random_operator(rng, n), random_operator(rng, n)
            for _ in range(3):
                f = random_poly(rng, ring, max_deg=5, max_terms=4)
                assert apply(weyl_mul(P, Q), f) == apply(P, apply(Q, f))


def test_size_mismatch():
    with pytest.raises(ValueError):
        weyl_mul(D("d1"), D("d1", 2))


def test_commutator_examples():
    assert commutator(D("d1"), D("x1")) == 1
    assert commutator(D("d1", 2), D("x2", 2)) == 0
    assert commutator(D("x1*d1"), D("x1")) == D("x1")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_canonical_relations(n):
    for i in range(n):
        for j in range(n):
            xi, xj = WeylOperator.x(n, i), WeylOperator.x(n, j)
            di, dj = WeylOperator.d(n, i), WeylOperator.d(n, j)
            assert commutator(di, xj) == (1 if i == j else 0)
            assert commutator(xi, xj) == 0
            assert commutator(di, dj) == 0


def test_op_order():
    assert op_order(D("x1^3")) == 0
    assert op_order(D("x1*d1 - 5")) == 1
    assert op_order(D("d1^2*d2 + x1*d1", 2)) == 3
    with pytest.raises(ZeroPolynomialError):
        op_order(WeylOperator(1))


def test_principal_symbol_examples():
    ring = cotangent_ring(1)
    assert principal_symbol(D("x1^3")) == parse_polynomial("x1^3", ring)
    assert principal_symbol(D("x1*d1 - 7/3")) == parse_polynomial("x1*xi1", ring)
    assert principal_symbol(D("d1^2 + x1*d1 + 1")) == parse_polynomial("xi1^2", ring)


def test_symbol_multiplicative():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.choice([1, 2])
        P, Q = random_operator(rng, n), random_operator(rng, n)
        assert principal_symbol(weyl_mul(P, Q)) == principal_symbol(P) * principal_symbol(Q)


def test_symbol_bracket_when_bracket_vanishes():
    rng = random.Random(12)
    seen_zero = 0
    for _ in range(200):
        n = rng.choice([1, 2])
        P, Q = random_operator(rng, n, max_deg=2, max_terms=2), random_operator(rng, n, max_deg=2, max_terms=2)
        p, q = op_order(P), op_order(Q)
        theta = canonical_symplectic(n)
        br = bracket_eval(theta, principal_symbol(P), principal_symbol(Q))
        C = commutator(P, Q)
        assert homogeneous_symbol(C, p + q - 1) == br
        if not br:
            seen_zero += 1
            assert not C or op_order(C) < p + q - 1
    assert seen_zero > 0


def test_parse_normal_orders():
    assert D("d1*x1") == D("x1*d1 + 1")
    assert D("d1*x1").to_string() == "x1*d1 + 1"
    assert parse_operator("dx*x", base_names=["x"]) == parse_operator("x*d1 + 1", base_names=["x"])
    with pytest.raises(ParseError):
        D("d2*x1")


def test_format_roundtrip():
    rng = random.Random(1)
    for _ in range(50):
        P = random_operator(rng, 2)
        assert D(P.to_string(), 2) == P


# -- Groebner bases and characteristic ideals -----------------------------------------

def pres(n, *texts):
    return DModulePresentation(n, [D(t, n) for t in texts])


def test_weyl_groebner_trivial_examples():
    assert weyl_groebner(pres(1, "d1")) == [D("d1")]
    assert weyl_groebner(pres(1, "x1*d1")) == [D("x1*d1")]


def test_two_generator_example_collapses_to_unit():
    """The left ideal (d1^2, d2^2 - x1) contains 1.

    Certificate built by hand from the defining relation:
      d2^2 * d1^2 - d1^2 * (d2^2 - x1) = x1*d1^2 + 2*d1
      => d1 = 1/2 * (d2^2*d1^2 - d1^2*(d2^2 - x1) - x1*d1^2)
      and  d2^2*d1 - d1*(d2^2 - x1) - x1*d1 = 1.
    """
    n = 2
    a, b = D("d1^2", n), D("d2^2 - x1", n)
    d1 = (D("d2^2", n) * a - D("d1^2", n) * b - D("x1", n) * a).scale(Fraction(1, 2))
    assert d1 == D("d1", n)
    one = D("d2^2", n) * d1 - D("d1", n) * b - D("x1", n) * d1
    assert one == 1
    assert weyl_groebner(pres(2, "d1^2", "d2^2 - x1")) == [WeylOperator.const(2, 1)]


FIXTURES = [
    (1, ["d1"]),
    (1, ["d1^2"]),
    (1, ["x1*d1"]),
    (1, ["x1*d1 - 1"]),
    (1, ["x1*d1 - 1/2"]),
    (1, ["x1^2"]),
    (1, ["x1^2*d1 + 1"]),
    (2, ["d1^2", "x2^2"]),
    (2, ["x1*d1", "x2^2*d2"]),
    (2, ["x1*d2 - x2*d1", "x1*d1 + x2*d2"]),
    (2, ["d1 - x2*d2", "d2^2"]),
    (2, ["d1^2", "d2^2 - x1"]),
]


@pytest.mark.parametrize("n, gens", FIXTURES, ids=lambda v: str(v))
def test_weyl_groebner_is_groebner_and_deterministic(n, gens):
    I = pres(n, *gens)
    gb = weyl_groebner(I)
    assert is_weyl_groebner(gb)
    assert weyl_groebner(pres(n, *reversed(gens))) == gb
    order = weyl_order(n)
    for g in I.generators:
        assert not weyl_normal_form(g, gb, order)


@pytest.mark.parametrize("n, gens", FIXTURES, ids=lambda v: str(v))
def test_characteristic_ideal_is_involutive(n, gens):
    J = characteristic_ideal(pres(n, *gens))
    assert is_involutive(J, canonical_symplectic(J.ring)).involutive


@pytest.mark.parametrize("n, gens", FIXTURES, ids=lambda v: str(v))
def test_symbols_of_ideal_elements_lie_in_char_ideal(n, gens):
    rng = random.Random(str(gens))
    I = pres(n, *gens)
    J = characteristic_ideal(I)
    for _ in range(10):
        h = random_operator(rng, n, max_deg=2, max_terms=3)
        g = rng.choice(I.generators)
        assert ideal_membership(J, principal_symbol(weyl_mul(h, g)))


@pytest.mark.parametrize("text", ["x1*d1", "x1*d1 - 1", "x1*d1 - 1/2", "x1*d1 + 3"])
def test_euler_characteristic_ideal(text):
    J = characteristic_basis(pres(1, text))
    assert J == [parse_polynomial("x1*xi1", cotangent_ring(1))]


def test_characteristic_ideal_of_d():
    assert characteristic_basis(pres(1, "d1")) == [parse_polynomial("xi1", cotangent_ring(1))]


def test_characteristic_ideal_uses_given_ring():
    ring = PolyRing(("x", "xi"), cotangent=True)
    J = characteristic_ideal(DModulePresentation(1, [parse_operator("d1^2", base_names=["x"])]), ring)
    assert groebner_basis(J) == [parse_polynomial("xi^2", ring)]
