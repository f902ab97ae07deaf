"""Bivectors, differential forms, brackets and the involutivity criteria.

A bivector stores ``Theta^{ij}`` for i < j and defines
``{f, g} = sum_{i<j} Theta^{ij} (d_i f d_j g - d_j f d_i g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ._parallel import pmap
from .errors import RegularityError, RingMismatchError
from .idealkit import Ideal, groebner_basis, normal_form, radical_membership
from .polyarith import GREVLEX, Polynomial, PolyRing, poly_diff


def _check_ring(a, b):
    if a != b:
        raise RingMismatchError(f"{a} vs {b}")


def _clean_coefficients(ring, coefficients, check_key):
    out = {}
    for key, c in coefficients.items():
        key = check_key(key)
        if not isinstance(c, Polynomial):
            c = ring.const(c)
        _check_ring(ring, c.ring)
        if c:
            out[key] = out.get(key, ring.zero()) + c
            if not out[key]:
                del out[key]
    return out


class Bivector:
    def __init__(self, ring: PolyRing, coefficients=None):
        def check(key):
            i, j = key
            if not (0 <= i < j < ring.arity):
                raise ValueError(f"bivector index pair {key} must satisfy i < j < {ring.arity}")
            return (i, j)

        self.ring = ring
        self.coefficients = _clean_coefficients(ring, coefficients or {}, check)

    @classmethod
    def from_pairs(cls, ring, entries) -> Bivector:
        """Accept pairs in either order; (j, i) contributes with a sign flip."""
        coeffs = {}
        for (i, j), c in entries.items():
            if i == j:
                raise ValueError("diagonal bivector entry")
            if not isinstance(c, Polynomial):
                c = ring.const(c)
            key, c = ((i, j), c) if i < j else ((j, i), -c)
            coeffs[key] = coeffs.get(key, ring.zero()) + c
        return cls(ring, coeffs)

    def coefficient(self, i, j) -> Polynomial:
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.coefficients.get((i, j), self.ring.zero())
        return -self.coefficients.get((j, i), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.coefficients

    def __eq__(self, other):
        if not isinstance(other, Bivector):
            return NotImplemented
        return self.ring == other.ring and self.coefficients == other.coefficients

    def __repr__(self):
        names = self.ring.names
        parts = [f"({c})*d_{names[i]}^d_{names[j]}" for (i, j), c in sorted(self.coefficients.items())]
        return "Bivector(" + (" + ".join(parts) or "0") + ")"


class DifferentialForm:
    """Form of fixed degree: strictly increasing index tuples -> coefficients."""

    def __init__(self, ring: PolyRing, degree: int, coefficients=None):
        if degree < 0:
            raise ValueError("form degree must be non-negative")

        def check(key):
            key = tuple(key)
            if len(key) != degree or any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"form index {key} is not strictly increasing of length {degree}")
            if key and not (0 <= key[0] and key[-1] < ring.arity):
                raise ValueError(f"form index {key} out of range")
            return key

        self.ring = ring
        self.degree = degree
        self.coefficients = _clean_coefficients(ring, coefficients or {}, check)

    def is_zero(self) -> bool:
        return not self.coefficients

    def reduce(self, basis, order=GREVLEX) -> DifferentialForm:
        return DifferentialForm(
            self.ring, self.degree, {S: normal_form(c, basis, order) for S, c in self.coefficients.items()}
        )

    def scale(self, c) -> DifferentialForm:
        return DifferentialForm(self.ring, self.degree, {S: v * c for S, v in self.coefficients.items()})

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        return (self.ring, self.degree, self.coefficients) == (other.ring, other.degree, other.coefficients)

    def to_string(self) -> str:
        names = self.ring.names
        if not self.coefficients:
            return "0"
        parts = []
        for S, c in sorted(self.coefficients.items()):
            basis = "^".join("d" + names[i] for i in S)
            if not S:
                parts.append(str(c))
            elif c == 1:
                parts.append(basis)
            else:
                parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DifferentialForm[{self.degree}]({self.to_string()})"


@dataclass
class DeformationTable:
    """First-order data {x_i, x_j} for i < j (absent pairs are zero)."""

    ring: PolyRing
    brackets: dict = field(default_factory=dict)

    def value(self, i, j) -> Polynomial:
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.brackets.get((i, j), self.ring.zero())
        return -self.brackets.get((j, i), self.ring.zero())


@dataclass
class NormalBivectorClass:
    regular_sequence: list
    entries: dict

    def is_zero(self) -> bool:
        return all(not v for v in self.entries.values())


@dataclass
class Witness:
    f: Polynomial
    g: Polynomial
    bracket: Polynomial
    normal_form: Polynomial


@dataclass
class InvolutivityVerdict:
    involutive: bool
    witnesses: list

    @property
    def verdict(self) -> str:
        return "involutive" if self.involutive else "not_involutive"


def canonical_symplectic(ring) -> Bivector:
    """Bivector with {xi_i, x_i} = 1; ``ring`` may be a cotangent ring or n."""
    if isinstance(ring, int):
        from .polyarith import cotangent_ring

        ring = cotangent_ring(ring)
    if not ring.cotangent:
        raise ValueError(f"{ring} has no cotangent structure")
    # {x_i, xi_i} = -1, stored on the ordered pair (x index, xi index)
    return Bivector.from_pairs(ring, {(x, xi): -1 for x, xi in ring.pairs()})


def deformation_class(T: DeformationTable) -> Bivector:
    return Bivector(T.ring, {key: c for key, c in T.brackets.items()})


def table_of(theta: Bivector) -> DeformationTable:
    return DeformationTable(theta.ring, dict(theta.coefficients))


def bracket_eval(theta: Bivector, f: Polynomial, g: Polynomial) -> Polynomial:
    _check_ring(theta.ring, f.ring)
    _check_ring(theta.ring, g.ring)
    out = theta.ring.zero()
    for (i, j), c in theta.coefficients.items():
        term = poly_diff(f, i) * poly_diff(g, j) - poly_diff(f, j) * poly_diff(g, i)
        if term:
            out = out + c * term
    return out


def is_involutive(I: Ideal, theta: Bivector, generators: Sequence[Polynomial] | None = None) -> InvolutivityVerdict:
    """Check {g_i, g_j} in I over generator pairs (j < i), collecting all failures.

    Generator pairs suffice by the Leibniz rule.
    """
    _check_ring(I.ring, theta.ring)
    gens = list(generators) if generators is not None else list(I.generators)
    gb = groebner_basis(I)
    pairs = [(gens[i], gens[j]) for i in range(len(gens)) for j in range(i)]

    def test(pair):
        f, g = pair
        b = bracket_eval(theta, f, g)
        r = normal_form(b, gb) if gb else b
        return None if not r else Witness(f, g, b, r)

    witnesses = [w for w in pmap(test, pairs) if w is not None]
    return InvolutivityVerdict(not witnesses, witnesses)


def _det(matrix):
    """Laplace expansion; matrices here are at most a few rows."""
    k = len(matrix)
    if k == 0:
        return None
    if k == 1:
        return matrix[0][0]
    total = None
    for col in range(k):
        entry = matrix[0][col]
        if not entry:
            continue
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        sub = _det(minor)
        term = entry * sub if col % 2 == 0 else -(entry * sub)
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0].ring.zero()


def jacobian(fs: Sequence[Polynomial]) -> list:
    ring = fs[0].ring
    return [[poly_diff(f, i) for i in range(ring.arity)] for f in fs]


def check_regularity(fs: Sequence[Polynomial]):
    """Return (omega coefficients, GB of (fs)).

    Raise RegularityError unless some maximal Jacobian minor lies outside
    sqrt(fs), i.e. Z is smooth at the generic point of some component.
    """
    if not fs:
        raise RegularityError("empty sequence")
    ring = fs[0].ring
    for f in fs:
        _check_ring(ring, f.ring)
    I = Ideal(ring, fs)
    gb = groebner_basis(I)
    if gb == [ring.one()]:
        raise RegularityError("sequence generates the unit ideal; Z is empty")
    J = jacobian(fs)
    l = len(fs)
    coeffs = {}
    survives = False
    for S in itertools.combinations(range(ring.arity), l):
        minor = _det([[row[c] for c in S] for row in J])
        if minor:
            coeffs[S] = minor
            if not survives and not radical_membership(I, minor):
                survives = True
    if not survives:
        raise RegularityError("every maximal Jacobian minor vanishes on Z (lies in sqrt(fs))")
    return coeffs, gb


def conormal_determinant(fs: Sequence[Polynomial]) -> DifferentialForm:
    """df_1 ^ ... ^ df_l in the dx basis, after the regularity check."""
    coeffs, _ = check_regularity(fs)
    return DifferentialForm(fs[0].ring, len(fs), coeffs)


def contraction_sign(S, i, j) -> int:
    """Sign of moving i then j to the front of the increasing tuple S."""
    pi, pj = S.index(i), S.index(j)
    return -1 if (pi + pj - 1) % 2 else 1


def contract_form(theta: Bivector, omega: DifferentialForm) -> DifferentialForm:
    _check_ring(theta.ring, omega.ring)
    if omega.degree < 2:
        raise ValueError("contraction by a bivector needs a form of degree >= 2")
    out = {}
    for S, c in omega.coefficients.items():
        for (i, j), t in theta.coefficients.items():
            if i in S and j in S:
                rest = tuple(k for k in S if k not in (i, j))
                v = t * c
                if contraction_sign(S, i, j) < 0:
                    v = -v
                out[rest] = out.get(rest, theta.ring.zero()) + v
    return DifferentialForm(theta.ring, omega.degree - 2, out)


def conormal_projection(theta: Bivector, fs: Sequence[Polynomial]) -> NormalBivectorClass:
    _, gb = check_regularity(fs)
    entries = {}
    for a, b in itertools.combinations(range(len(fs)), 2):
        entries[(a, b)] = normal_form(bracket_eval(theta, fs[a], fs[b]), gb)
    return NormalBivectorClass(list(fs), entries)


def contraction_vanishes_mod(theta: Bivector, fs: Sequence[Polynomial]) -> bool:
    """Theta contracted with the conormal determinant is zero modulo (fs).

    For l < 2 the contraction lands in negative degree and vanishes.
    """
    omega = conormal_determinant(fs)
    if omega.degree < 2:
        return True
    gb = groebner_basis(Ideal(fs[0].ring, fs))
    return contract_form(theta, omega).reduce(gb).is_zero()

