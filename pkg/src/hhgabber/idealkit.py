"""Commutative Groebner bases and the ideal-theoretic tests built on them."""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RadicalMismatchError, RingMismatchError, UnsupportedError
from .polyarith import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    leading_term,
    mono_divides,
    mono_lcm,
    mono_quotient,
    squarefree_part,
)

INFINITE = math.inf


class Ideal:
    """Ideal of a polynomial ring given by generators.

    Zero generators are dropped, so the zero ideal has an empty generator
    list.  Reduced Groebner bases are cached per monomial order.
    """

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial]):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb_cache = {}
        self._lock = threading.Lock()

    @classmethod
    def of(cls, *generators: Polynomial) -> Ideal:
        return cls(generators[0].ring, generators)

    def groebner(self, order: MonomialOrder = GREVLEX) -> list:
        return groebner_basis(self, order)

    def contains(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return ideal_membership(self, f, order)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = groebner_basis(self)
        return len(gb) == 1 and gb[0].is_constant()

    def __add__(self, other: Ideal) -> Ideal:
        _check_ring(self.ring, other.ring)
        return Ideal(self.ring, self.generators + other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and groebner_basis(self) == groebner_basis(other)

    def __hash__(self):
        return hash((self.ring, tuple(groebner_basis(self))))

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def _check_ring(a, b):
    if a != b:
        raise RingMismatchError(f"{a} vs {b}")


# -- division ---------------------------------------------------------------

def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    """Full remainder of ``f`` on division by ``basis`` (first divisor wins)."""
    leads = []
    for g in basis:
        m, c = leading_term(g, order)
        leads.append((m, c, [(gm, gc) for gm, gc in g.items() if gm != m]))
    key = order.key
    p = dict(f.items())
    r = {}
    while p:
        m = max(p, key=key)
        c = p.pop(m)
        for lm, lc, tail in leads:
            if mono_divides(lm, m):
                s = mono_quotient(m, lm)
                k = c / lc
                for gm, gc in tail:
                    t = tuple(a + b for a, b in zip(gm, s))
                    v = p.get(t, 0) - k * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            r[m] = c
    return Polynomial._raw(f.ring, r)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    fm, fc = leading_term(f, order)
    gm, gc = leading_term(g, order)
    l = mono_lcm(fm, gm)
    return f.mul_monomial(mono_quotient(l, fm), 1 / fc) - g.mul_monomial(mono_quotient(l, gm), 1 / gc)


# -- Buchberger ---------------------------------------------------------------

def buchberger(generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list:
    """Reduced Groebner basis, sorted by leading monomial descending.

    Normal selection (smallest lcm first) with the coprime and chain
    criteria.
    """
    gens = [g for g in generators if g]
    if not gens:
        return []
    ring = gens[0].ring
    key = order.key
    basis = []
    lms = []
    pairs = set()

    def add(h):
        h = h.monic(order)
        basis.append(h)
        lms.append(leading_term(h, order)[0])
        k = len(basis) - 1
        for i in range(k):
            pairs.add((i, k))

    for g in sorted(gens, key=lambda p: key(leading_term(p, order)[0])):
        h = normal_form(g, basis, order) if basis else g
        if h:
            add(h)

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        if _chain_skip(i, j, lcm, lms, pairs):
            continue
        h = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if h:
            add(h)
    return reduce_basis(basis, order)


def _chain_skip(i, j, lcm, lms, pairs) -> bool:
    for k in range(len(lms)):
        if k in (i, j) or not mono_divides(lms[k], lcm):
            continue
        if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
            return True
    return False


def reduce_basis(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> list:
    """Minimalize and interreduce a Groebner basis; output sorted descending."""
    key = order.key
    items = [(leading_term(g, order)[0], g.monic(order)) for g in basis if g]
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for m, g in items:
        if any(mono_divides(lm, m) for lm, _ in minimal):
            continue
        minimal.append((m, g))
    # no two leading monomials are equal here, so dropping divisible ones is safe
    reduced = []
    for idx, (m, g) in enumerate(minimal):
        others = [h for k, (_, h) in enumerate(minimal) if k != idx]
        r = normal_form(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: key(leading_term(g, order)[0]), reverse=True)
    return reduced


def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> list:
    with I._lock:
        cached = I._gb_cache.get(order)
        if cached is None:
            cached = tuple(buchberger(I.generators, order))
            I._gb_cache[order] = cached
    return list(cached)


def is_groebner(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """Every S-polynomial reduces to zero (checked directly, no criteria)."""
    for f, g in itertools.combinations(basis, 2):
        if normal_form(s_polynomial(f, g, order), basis, order):
            return False
    return True


def is_reduced(basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    lms = [leading_term(g, order) for g in basis]
    if any(c != 1 for _, c in lms):
        return False
    for k, g in enumerate(basis):
        for i, (lm, _) in enumerate(lms):
            if i != k and any(mono_divides(lm, m) for m in g.monomials()):
                return False
    return True


# -- membership ------------------------------------------------------------

def ideal_membership(I: Ideal, f: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
    _check_ring(I.ring, f.ring)
    if not f:
        return True
    gb = groebner_basis(I, order)
    return not normal_form(f, gb, order) if gb else False


def radical_membership(I: Ideal, f: Polynomial) -> bool:
    """f in sqrt(I), via 1 in I + (1 - t*f) over a ring with a fresh t."""
    _check_ring(I.ring, f.ring)
    if ideal_membership(I, f):
        return True
    ring = I.ring
    big = ring.extend([ring.fresh_name("t")])
    t = big.gen(ring.arity)
    gens = [g.embed(big) for g in I.generators]
    gens.append(big.one() - t * f.embed(big))
    gb = buchberger(gens, GREVLEX)
    return len(gb) == 1 and gb[0].is_constant()


# -- elimination and dimension -----------------------------------------------

def elimination_order(ring: PolyRing, drop_vars) -> MonomialOrder:
    drop = set(drop_vars)
    return MonomialOrder("weighted", tuple(1 if i in drop else 0 for i in range(ring.arity)))


def eliminate(I: Ideal, drop_vars) -> Ideal:
    """Generators of I intersected with the subring without ``drop_vars``.

    Uses the block weight order (weight 1 on dropped variables, grevlex
    ties), which has the elimination property.
    """
    drop = set(drop_vars)
    order = elimination_order(I.ring, drop)
    kept = [g for g in groebner_basis(I, order) if not (g.variables() & drop)]
    return Ideal(I.ring, kept)


def _pure_powers(lms, arity):
    bounds = [None] * arity
    for m in lms:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
    return bounds


def standard_monomials(I: Ideal, order: MonomialOrder = GREVLEX) -> list:
    """Monomials outside the leading-term ideal; raises if there are infinitely many."""
    gb = groebner_basis(I, order)
    arity = I.ring.arity
    if not gb:
        raise UnsupportedError("zero ideal has infinitely many standard monomials")
    lms = [leading_term(g, order)[0] for g in gb]
    bounds = _pure_powers(lms, arity)
    if any(b is None for b in bounds):
        raise UnsupportedError("quotient is not finite-dimensional")
    out = []
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(mono_divides(lm, m) for lm in lms):
            out.append(m)
    out.sort(key=order.key)
    return out


def vector_space_dimension(I: Ideal, order: MonomialOrder = GREVLEX):
    """dim_k A/I, or ``INFINITE`` when some variable has no pure power among the leading monomials."""
    gb = groebner_basis(I, order)
    if not gb:
        return INFINITE
    lms = [leading_term(g, order)[0] for g in gb]
    if any(b is None for b in _pure_powers(lms, I.ring.arity)):
        return INFINITE
    return len(standard_monomials(I, order))


# -- radicals ------------------------------------------------------------------

@dataclass(frozen=True)
class RadicalStrategy:
    kind: str = "auto"
    generators: tuple = ()

    KINDS = ("auto", "monomial", "principal", "zero_dimensional", "user_supplied")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown radical strategy {self.kind!r}")
        if self.kind == "user_supplied":
            if not self.generators or any(not g for g in self.generators):
                raise ValueError("user-supplied radical needs nonzero generators")

    @classmethod
    def user(cls, generators) -> RadicalStrategy:
        return cls("user_supplied", tuple(generators))


def _radical_monomial(I: Ideal) -> Ideal:
    gb = groebner_basis(I)
    if not gb or not all(g.is_monomial() for g in gb):
        raise UnsupportedError("monomial strategy needs a monomial ideal")
    supports = sorted({tuple(min(e, 1) for e in next(iter(g.monomials()))) for g in gb})
    minimal = [m for m in supports if not any(o != m and mono_divides(o, m) for o in supports)]
    return Ideal(I.ring, reduce_basis([I.ring.monomial(m) for m in minimal]))


def _radical_principal(I: Ideal) -> Ideal:
    gb = groebner_basis(I)
    if len(gb) != 1:
        raise UnsupportedError("principal strategy needs a principal ideal")
    return Ideal(I.ring, [squarefree_part(gb[0])])


def univariate_minimal_polynomial(I: Ideal, var: int) -> Polynomial:
    """Generator of I intersected with k[x_var] (raises if that is zero)."""
    others = [i for i in range(I.ring.arity) if i != var]
    elim = eliminate(I, others)
    gb = groebner_basis(elim)
    if not gb:
        raise UnsupportedError(f"no univariate polynomial in {I.ring.names[var]}")
    return gb[-1] if len(gb) == 1 else min(gb, key=lambda g: g.degree())


def _radical_zero_dimensional(I: Ideal) -> Ideal:
    if vector_space_dimension(I) == INFINITE:
        raise UnsupportedError("zero-dimensional strategy needs a finite quotient")
    extra = [squarefree_part(univariate_minimal_polynomial(I, v)) for v in range(I.ring.arity)]
    return Ideal(I.ring, groebner_basis(Ideal(I.ring, list(I.generators) + extra)))


def radical_with_strategy(I: Ideal, strategy: RadicalStrategy = RadicalStrategy()):
    """(radical ideal, strategy kind actually used, trusted flag)."""
    kind = strategy.kind
    if kind == "user_supplied":
        R = Ideal(I.ring, strategy.generators)
        if not verify_radical_equivalence(I, R):
            raise RadicalMismatchError("user-supplied radical does not have the same radical")
        return R, kind, False
    if groebner_basis(I) == [I.ring.one()]:
        return Ideal(I.ring, [I.ring.one()]), ("monomial" if kind == "auto" else kind), True
    table = {
        "monomial": _radical_monomial,
        "principal": _radical_principal,
        "zero_dimensional": _radical_zero_dimensional,
    }
    if kind != "auto":
        return table[kind](I), kind, True
    for name in ("monomial", "principal", "zero_dimensional"):
        try:
            return table[name](I), name, True
        except UnsupportedError:
            continue
    raise UnsupportedError("no automatic radical strategy applies; supply one with 'radical user = ...'")


def radical(I: Ideal, strategy: RadicalStrategy = RadicalStrategy()) -> Ideal:
    return radical_with_strategy(I, strategy)[0]


def verify_radical_equivalence(I: Ideal, R: Ideal) -> bool:
    _check_ring(I.ring, R.ring)
    return all(radical_membership(I, g) for g in R.generators) and all(
        radical_membership(R, g) for g in I.generators
    )


def rational_rank(rows) -> int:
    """Rank of a matrix of Fractions by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                k = m[r][col] / p
                m[r] = [a - k * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank
