import itertools
import random

import pytest

from hhgabber.errors import RegularityError, RingMismatchError
from hhgabber.idealkit import Ideal, groebner_basis, ideal_membership, normal_form
from hhgabber.polyarith import PolyRing, cotangent_ring, parse_polynomial
from hhgabber.poissoncalc import (
    Bivector,
    DeformationTable,
    DifferentialForm,
    bracket_eval,
    canonical_symplectic,
    conormal_determinant,
    conormal_projection,
    contract_form,
    contraction_vanishes_mod,
    deformation_class,
    is_involutive,
    table_of,
)

from gen import random_poly

T1 = cotangent_ring(1, ["x"])  # x, xi
T2 = cotangent_ring(2)  # x1, x2, xi1, xi2
XYZ = PolyRing(("x", "y", "z"))


def P(text, ring=T1):
    return parse_polynomial(text, ring)


def random_bivector(rng, ring, max_deg=1):
    coeffs = {}
    for i, j in itertools.combinations(range(ring.arity), 2):
        if rng.random() < 0.5:
            coeffs[(i, j)] = random_poly(rng, ring, max_deg=max_deg, max_terms=2)
    return Bivector(ring, coeffs)


# -- canonical bracket ------------------------------------------------------------------

def test_canonical_signs_n1():
    theta = canonical_symplectic(T1)
    assert bracket_eval(theta, P("x"), P("xi")) == -1
    assert bracket_eval(theta, P("xi"), P("x")) == 1


def test_canonical_signs_n2():
    theta = canonical_symplectic(2)
    for i in range(2):
        for j in range(2):
            xi, xj = T2.gen(2 + i), T2.gen(j)
            assert bracket_eval(theta, xi, xj) == (1 if i == j else 0)
    assert bracket_eval(theta, T2.gen(0), T2.gen(1)) == 0


def test_canonical_requires_cotangent():
    with pytest.raises(ValueError):
        canonical_symplectic(XYZ)


def test_bracket_examples():
    theta = canonical_symplectic(T1)
    assert bracket_eval(theta, P("x^2"), P("xi")) == P("-2*x")
    assert bracket_eval(Bivector(XYZ), parse_polynomial("x", XYZ), parse_polynomial("y", XYZ)) == 0


def test_bracket_ring_mismatch():
    with pytest.raises(RingMismatchError):
        bracket_eval(canonical_symplectic(T1), P("x"), T2.gen(0))


def test_from_pairs_flips_sign():
    assert Bivector.from_pairs(XYZ, {(2, 0): 1}) == Bivector(XYZ, {(0, 2): -1})
    with pytest.raises(ValueError):
        Bivector(XYZ, {(1, 0): 1})


@pytest.mark.parametrize("seed", range(5))
def test_biderivation_and_skew(seed):
    rng = random.Random(seed)
    for ring in (T1, T2, XYZ):
        theta = random_bivector(rng, ring)
        for _ in range(10):
            f, g, h = (random_poly(rng, ring, max_deg=3, max_terms=3) for _ in range(3))
            assert bracket_eval(theta, f * g, h) == f * bracket_eval(theta, g, h) + g * bracket_eval(theta, f, h)
            assert bracket_eval(theta, f, g) == -bracket_eval(theta, g, f)
            assert not bracket_eval(theta, f, f)


def test_canonical_jacobi():
    rng = random.Random(21)
    for ring in (T1, T2):
        theta = canonical_symplectic(ring)
        br = lambda a, b: bracket_eval(theta, a, b)  # noqa: E731
        for _ in range(30):
            f, g, h = (random_poly(rng, ring, max_deg=3, max_terms=3) for _ in range(3))
            assert br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g)) == 0


# -- deformation tables ----------------------------------------------------------------

def test_deformation_class_weyl_table():
    table = DeformationTable(T1, {(0, 1): T1.const(-1)})
    theta = deformation_class(table)
    assert theta == canonical_symplectic(T1)
    assert bracket_eval(theta, P("x"), P("xi")) == table.value(0, 1)
    assert bracket_eval(theta, P("xi"), P("x")) == table.value(1, 0)


def test_deformation_class_zero_table():
    assert deformation_class(DeformationTable(XYZ)).is_zero()


def test_deformation_class_sl2():
    x, y, z = XYZ.gens()
    table = DeformationTable(XYZ, {(0, 1): z, (1, 2): x, (0, 2): -y})
    theta = deformation_class(table)
    assert theta == Bivector.from_pairs(XYZ, {(0, 1): z, (1, 2): x, (2, 0): y})
    assert bracket_eval(theta, z, x) == y
    for i, j in itertools.permutations(range(3), 2):
        assert bracket_eval(theta, XYZ.gen(i), XYZ.gen(j)) == table.value(i, j)


def test_table_roundtrip():
    rng = random.Random(5)
    for _ in range(30):
        ring = rng.choice([T1, T2, XYZ])
        theta = random_bivector(rng, ring, max_deg=2)
        assert deformation_class(table_of(theta)) == theta


# -- involutivity -------------------------------------------------------------------------

def test_is_involutive_examples():
    theta = canonical_symplectic(T1)
    assert is_involutive(Ideal.of(P("x*xi")), theta).involutive
    verdict = is_involutive(Ideal.of(P("x"), P("xi")), theta)
    assert verdict.verdict == "not_involutive"
    (w,) = verdict.witnesses
    assert (w.f, w.g, w.bracket, w.normal_form) == (P("xi"), P("x"), T1.one(), T1.one())
    theta2 = canonical_symplectic(T2)
    assert is_involutive(Ideal.of(T2.gen(0), T2.gen(3)), theta2).involutive


def test_is_involutive_collects_all_witnesses():
    theta = canonical_symplectic(T2)
    x1, x2, xi1, xi2 = T2.gens()
    verdict = is_involutive(Ideal.of(x1, x2, xi1, xi2), theta)
    assert len(verdict.witnesses) == 2


INVOLUTIVE = [
    (T1, ["x*xi"]),
    (T1, ["xi^2"]),
    (T1, ["x^2", "x*xi"]),
    (T2, ["x1", "xi2"]),
    (T2, ["xi1^2", "x2^2"]),
    (T2, ["x1*xi1 + x2*xi2"]),
    (T2, ["x1*xi2 - x2*xi1", "x1^2 + x2^2"]),
]


@pytest.mark.parametrize("ring, gens", INVOLUTIVE, ids=lambda v: str(v))
def test_leibniz_closure(ring, gens):
    theta = canonical_symplectic(ring)
    gs = [P(g, ring) for g in gens]
    I = Ideal(ring, gs)
    assert is_involutive(I, theta).involutive
    rng = random.Random(str(gens))
    for _ in range(50):
        h1, h2 = (random_poly(rng, ring, max_deg=2, max_terms=3) for _ in range(2))
        a, b = rng.choice(gs), rng.choice(gs)
        assert ideal_membership(I, bracket_eval(theta, h1 * a, h2 * b))


# -- forms and the conormal criteria ------------------------------------------------------

def test_conormal_determinant_examples():
    assert conormal_determinant([P("x")]) == DifferentialForm(T1, 1, {(0,): 1})
    assert conormal_determinant([P("x"), P("xi")]) == DifferentialForm(T1, 2, {(0, 1): 1})
    R = PolyRing(("x", "y"))
    f = [parse_polynomial("x - y^2", R), parse_polynomial("y", R)]
    assert conormal_determinant(f) == DifferentialForm(R, 2, {(0, 1): 1})


@pytest.mark.parametrize("gens", [["x^2"], ["x^2 - 2*x*xi + xi^2"], ["1"], ["x", "x^2"]])
def test_regularity_failures(gens):
    with pytest.raises(RegularityError):
        conormal_determinant([P(g) for g in gens])


def test_regularity_checks_generic_point_only():
    # two crossing lines: singular at the origin, smooth generically
    assert conormal_determinant([P("x*xi")]) == DifferentialForm(T1, 1, {(0,): P("xi"), (1,): P("x")})


def test_contract_form_examples():
    theta = Bivector(T1, {(0, 1): 1})
    assert contract_form(theta, DifferentialForm(T1, 2, {(0, 1): 1})) == DifferentialForm(T1, 0, {(): 1})
    R = PolyRing(("x", "y", "xi"))
    theta = Bivector(R, {(0, 2): 1})
    assert contract_form(theta, DifferentialForm(R, 2, {(0, 1): 1})).is_zero()
    R3 = PolyRing(("x1", "x2", "x3"))
    out = contract_form(Bivector(R3, {(0, 1): 1}), DifferentialForm(R3, 3, {(0, 1, 2): 1}))
    assert out == DifferentialForm(R3, 1, {(2,): 1})
    # moving 1 then 3 to the front of (1,2,3) is odd
    out = contract_form(Bivector(R3, {(0, 2): 1}), DifferentialForm(R3, 3, {(0, 1, 2): 1}))
    assert out == DifferentialForm(R3, 1, {(1,): -1})


def test_contract_form_degree_error():
    with pytest.raises(ValueError):
        contract_form(Bivector(T1, {(0, 1): 1}), DifferentialForm(T1, 1, {(0,): 1}))


def test_conormal_projection_examples():
    theta = canonical_symplectic(T1)
    eta = conormal_projection(theta, [P("x"), P("xi")])
    assert eta.entries == {(0, 1): T1.const(-1)} and not eta.is_zero()
    theta2 = canonical_symplectic(T2)
    assert conormal_projection(theta2, [T2.gen(0), T2.gen(1)]).is_zero()
    eta1 = conormal_projection(theta, [P("x")])
    assert eta1.entries == {} and eta1.is_zero()


def _coordinate_case(rng, ring, l):
    S = sorted(rng.sample(range(ring.arity), l))
    return [ring.gen(i) for i in S]


def _perturbed_case(rng, ring, l):
    S = sorted(rng.sample(range(ring.arity), l))
    others = [i for i in range(ring.arity) if i not in S]
    fs = []
    for s in S:
        p = ring.zero()
        for _ in range(rng.randint(0, 2)):
            if others:
                e = [0] * ring.arity
                for _ in range(rng.randint(1, 2)):
                    e[rng.choice(others)] += 1
                p = p + ring.monomial(tuple(e)) * rng.choice([1, -1, 2])
        fs.append(ring.gen(s) - p)
    return fs


def test_criteria_equivalence_100_cases():
    rng = random.Random(2024)
    rings = [T1, T2, XYZ, PolyRing(("a", "b", "c", "d"))]
    zero_seen = nonzero_seen = 0
    for k in range(100):
        ring = rng.choice(rings)
        l = rng.randint(2, ring.arity)
        fs = (_coordinate_case if k % 2 == 0 else _perturbed_case)(rng, ring, l)
        if rng.random() < 0.5:
            theta = canonical_symplectic(ring) if ring.cotangent else random_bivector(rng, ring)
        else:
            theta = random_bivector(rng, ring)
        eta_zero = conormal_projection(theta, fs).is_zero()
        assert eta_zero == contraction_vanishes_mod(theta, fs)
        zero_seen += eta_zero
        nonzero_seen += not eta_zero
    assert zero_seen and nonzero_seen


def test_form_reduction():
    gb = groebner_basis(Ideal.of(P("x")))
    w = DifferentialForm(T1, 1, {(0,): P("x + xi"), (1,): P("x^2")})
    assert w.reduce(gb) == DifferentialForm(T1, 1, {(0,): P("xi")})
    assert normal_form(P("x*xi"), gb) == 0
