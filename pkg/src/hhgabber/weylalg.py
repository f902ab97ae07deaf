"""The Weyl algebra D_n: normal-ordered operators, left Groebner bases, symbols.

An operator is stored as a map from exponent tuples ``(a_1..a_n, b_1..b_n)``
to coefficients, meaning ``x^a d^b`` with every x to the left of every d.
The same tuple layout is used by the cotangent ring k[x, xi], which makes
leading monomials and principal symbols cheap to read off.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, ZeroPolynomialError
from .idealkit import Ideal, groebner_basis
from .polyarith import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    cotangent_ring,
    format_term,
    join_terms,
    mono_divides,
    mono_lcm,
    mono_quotient,
    order_filtration_order,
    parse_terms,
)


class WeylOperator:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("n must be positive")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != 2 * n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent tuple {m} for D_{n}")
            c = Fraction(c)
            if c:
                v = clean.get(m, 0) + c
                if v:
                    clean[m] = v
                else:
                    clean.pop(m, None)
        self.n = n
        self._terms = clean

    @classmethod
    def _raw(cls, n, terms):
        op = cls.__new__(cls)
        op.n = n
        op._terms = terms
        return op

    @classmethod
    def x(cls, n, i) -> WeylOperator:
        e = [0] * (2 * n)
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def d(cls, n, i) -> WeylOperator:
        e = [0] * (2 * n)
        e[n + i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def const(cls, n, c) -> WeylOperator:
        return cls(n, {(0,) * (2 * n): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, WeylOperator):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == WeylOperator.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def _coerce(self, other):
        if isinstance(other, WeylOperator):
            if other.n != self.n:
                raise ValueError(f"D_{self.n} vs D_{other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return WeylOperator.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return WeylOperator._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylOperator._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        result = WeylOperator.const(self.n, 1)
        for _ in range(k):
            result = weyl_mul(result, self)
        return result

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return WeylOperator(self.n)
        return WeylOperator._raw(self.n, {m: c * v for m, v in self._terms.items()})

    def to_string(self, base_names: Sequence[str] | None = None) -> str:
        return format_operator(self, base_names)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"WeylOperator({self.to_string()!r})"


def _check_n(P, Q):
    if P.n != Q.n:
        raise ValueError(f"D_{P.n} vs D_{Q.n}")


def _falling(a, k):
    return math.perm(a, k)


def _mono_product(n, m1, m2):
    """(x^a d^b)(x^c d^e) as {monomial: integer coefficient}.

    d_i^b x_i^c = sum_k k! C(b,k) C(c,k) x_i^(c-k) d_i^(b-k), independently per i.
    """
    a, b = m1[:n], m1[n:]
    c, e = m2[:n], m2[n:]
    per_var = []
    for i in range(n):
        opts = []
        for k in range(min(b[i], c[i]) + 1):
            coef = math.comb(b[i], k) * _falling(c[i], k)
            opts.append((k, coef))
        per_var.append(opts)
    out = {}
    for choice in itertools.product(*per_var):
        coef = 1
        xs = []
        ds = []
        for i, (k, ck) in enumerate(choice):
            coef *= ck
            xs.append(a[i] + c[i] - k)
            ds.append(b[i] + e[i] - k)
        key = tuple(xs) + tuple(ds)
        out[key] = out.get(key, 0) + coef
    return out


def weyl_mul(P: WeylOperator, Q: WeylOperator) -> WeylOperator:
    _check_n(P, Q)
    n = P.n
    out = {}
    for m1, c1 in P._terms.items():
        for m2, c2 in Q._terms.items():
            for m, k in _mono_product(n, m1, m2).items():
                v = out.get(m, 0) + c1 * c2 * k
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return WeylOperator._raw(n, out)


def commutator(P: WeylOperator, Q: WeylOperator) -> WeylOperator:
    return weyl_mul(P, Q) - weyl_mul(Q, P)


def op_order(P: WeylOperator) -> int:
    """Maximal total degree in the derivations."""
    if not P:
        raise ZeroPolynomialError("the zero operator has no order")
    n = P.n
    return max(sum(m[n:]) for m in P._terms)


def symbol_ring(n: int, ring: PolyRing | None = None) -> PolyRing:
    if ring is None:
        return cotangent_ring(n)
    if not ring.cotangent or ring.npairs != n:
        raise ValueError(f"{ring} is not a cotangent ring with {n} pairs")
    return ring


def principal_symbol(P: WeylOperator, ring: PolyRing | None = None) -> Polynomial:
    """Top-order part of P with d_i -> xi_i, in the cotangent ring."""
    k = op_order(P)
    n = P.n
    ring = symbol_ring(n, ring)
    return Polynomial(ring, {m: c for m, c in P._terms.items() if sum(m[n:]) == k})


def homogeneous_symbol(P: WeylOperator, degree: int, ring: PolyRing | None = None) -> Polynomial:
    """Terms of P of order exactly ``degree`` as a polynomial in k[x, xi]."""
    n = P.n
    ring = symbol_ring(n, ring)
    return Polynomial(ring, {m: c for m, c in P._terms.items() if sum(m[n:]) == degree})


def to_polynomial(P: WeylOperator, ring: PolyRing | None = None) -> Polynomial:
    """Commutative image (all terms, d -> xi); not a ring map."""
    return Polynomial(symbol_ring(P.n, ring), P._terms)


# -- left Groebner bases -------------------------------------------------------

def weyl_order(n: int) -> MonomialOrder:
    """Weight 0 on x, 1 on d, refined by grevlex on (x_1..x_n, d_1..d_n)."""
    return order_filtration_order(n)


def weyl_leading(P: WeylOperator, order: MonomialOrder):
    m = max(P._terms, key=order.key)
    return m, P._terms[m]


def _monomial_operator(n, exps, coeff=1):
    return WeylOperator._raw(n, {tuple(exps): Fraction(coeff)})


def weyl_normal_form(P: WeylOperator, basis: Sequence[WeylOperator], order: MonomialOrder) -> WeylOperator:
    """Full left reduction of P by ``basis``."""
    n = P.n
    leads = [(weyl_leading(g, order), g) for g in basis]
    key = order.key
    p = P
    done = {}
    while p:
        m, c = weyl_leading(p, order)
        for (lm, lc), g in leads:
            if mono_divides(lm, m):
                q = _monomial_operator(n, mono_quotient(m, lm), c / lc)
                p = p - weyl_mul(q, g)
                break
        else:
            done[m] = c
            rest = dict(p._terms)
            del rest[m]
            p = WeylOperator._raw(n, rest)
    return WeylOperator._raw(n, done)


def weyl_spoly(f: WeylOperator, g: WeylOperator, order: MonomialOrder) -> WeylOperator:
    n = f.n
    fm, fc = weyl_leading(f, order)
    gm, gc = weyl_leading(g, order)
    l = mono_lcm(fm, gm)
    return weyl_mul(_monomial_operator(n, mono_quotient(l, fm), 1 / fc), f) - weyl_mul(
        _monomial_operator(n, mono_quotient(l, gm), 1 / gc), g
    )


def _monic(P, order):
    _, c = weyl_leading(P, order)
    return P.scale(1 / c)


@dataclass(frozen=True)
class DModulePresentation:
    """Cyclic left module D_n / (D_n g_1 + ... + D_n g_k)."""

    n: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("presentation needs at least one generator")
        for g in gens:
            if not isinstance(g, WeylOperator) or g.n != self.n:
                raise ValueError(f"generator {g!r} is not in D_{self.n}")
            if not g:
                raise ValueError("presentation generators must be nonzero")


def weyl_groebner(I: DModulePresentation) -> list:
    """Reduced left Groebner basis in the order-filtration term order.

    Only the chain criterion is used; the coprime criterion is not valid in
    the Weyl algebra.
    """
    n = I.n
    order = weyl_order(n)
    key = order.key
    basis = []
    lms = []
    pairs = set()

    def add(h):
        h = _monic(h, order)
        basis.append(h)
        lms.append(weyl_leading(h, order)[0])
        k = len(basis) - 1
        pairs.update((i, k) for i in range(k))

    for g in sorted(I.generators, key=lambda p: key(weyl_leading(p, order)[0])):
        h = weyl_normal_form(g, basis, order) if basis else g
        if h:
            add(h)
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        skip = False
        for k in range(len(lms)):
            if k in (i, j) or not mono_divides(lms[k], lcm):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        h = weyl_normal_form(weyl_spoly(basis[i], basis[j], order), basis, order)
        if h:
            add(h)
    return _reduce_weyl_basis(basis, order)


def _reduce_weyl_basis(basis, order):
    key = order.key
    items = sorted(((weyl_leading(g, order)[0], _monic(g, order)) for g in basis), key=lambda t: key(t[0]))
    minimal = []
    for m, g in items:
        if not any(mono_divides(lm, m) for lm, _ in minimal):
            minimal.append((m, g))
    reduced = []
    for idx, (m, g) in enumerate(minimal):
        others = [h for k, (_, h) in enumerate(minimal) if k != idx]
        r = weyl_normal_form(g, others, order) if others else g
        reduced.append(_monic(r, order))
    reduced.sort(key=lambda g: key(weyl_leading(g, order)[0]), reverse=True)
    return reduced


def is_weyl_groebner(basis: Sequence[WeylOperator]) -> bool:
    """Every S-pair left-reduces to zero (no criteria)."""
    if not basis:
        return True
    order = weyl_order(basis[0].n)
    for f, g in itertools.combinations(basis, 2):
        if weyl_normal_form(weyl_spoly(f, g, order), basis, order):
            return False
    return True


def characteristic_ideal(I: DModulePresentation, ring: PolyRing | None = None) -> Ideal:
    """Ideal of k[x, xi] generated by the symbols of a Groebner basis of I."""
    ring = symbol_ring(I.n, ring)
    gb = weyl_groebner(I)
    return Ideal(ring, [principal_symbol(g, ring) for g in gb])


def characteristic_basis(I: DModulePresentation, ring: PolyRing | None = None) -> list:
    """Reduced grevlex Groebner basis of the characteristic ideal."""
    return groebner_basis(characteristic_ideal(I, ring))


# -- text ------------------------------------------------------------------------

def derivation_names(base_names: Sequence[str]) -> list:
    return [f"d{i + 1}" for i in range(len(base_names))]


def parse_operator(text: str, n: int | None = None, base_names: Sequence[str] | None = None) -> WeylOperator:
    """Parse a Weyl operator; factors are multiplied in written order.

    Base variables are ``base_names`` (default ``x1..xn``); the derivation
    in variable i is written ``d<i>`` (1-based) or ``d<name>``.
    """
    if base_names is None:
        if n is None:
            raise ValueError("need n or base_names")
        base_names = [f"x{i + 1}" for i in range(n)]
    base_names = list(base_names)
    n = len(base_names)
    lookup = {}
    for i, name in enumerate(base_names):
        lookup[name] = WeylOperator.x(n, i)
    for i, name in enumerate(base_names):
        lookup.setdefault(f"d{i + 1}", WeylOperator.d(n, i))
        lookup.setdefault(f"d{name}", WeylOperator.d(n, i))
    total = WeylOperator(n)
    for coef, factors, _ in parse_terms(text):
        term = WeylOperator.const(n, coef)
        for name, exp, col in factors:
            if name not in lookup:
                raise ParseError(f"unknown operator variable {name!r}", 1, col)
            term = weyl_mul(term, lookup[name] ** exp)
        total = total + term
    return total


def format_operator(P: WeylOperator, base_names: Sequence[str] | None = None) -> str:
    n = P.n
    base = list(base_names) if base_names else [f"x{i + 1}" for i in range(n)]
    names = base + derivation_names(base)
    order = weyl_order(n)
    signed = []
    for m, c in sorted(P._terms.items(), key=lambda t: order.key(t[0]), reverse=True):
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e]
        signed.append(format_term(c, factors))
    return join_terms(signed)
