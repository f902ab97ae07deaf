"""Desk-scale Hochschild computations on affine space.

Koszul complex of the diagonal and the HKR comparison, the tautological
class of a regular center, Chern characters as multiplicity times that
class, and the contraction action of bivectors on supported classes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InfiniteDimensionError, RadicalMismatchError
from .idealkit import (
    INFINITE,
    Ideal,
    groebner_basis,
    normal_form,
    rational_rank,
    standard_monomials,
    vector_space_dimension,
    verify_radical_equivalence,
)
from .poissoncalc import (
    Bivector,
    DifferentialForm,
    check_regularity,
    conormal_projection,
    contract_form,
    contraction_vanishes_mod,
)
from .polyarith import Polynomial, PolyRing


@dataclass
class KoszulComplex:
    """Koszul complex of (y_i - z_i) over k[y, z]; ``differentials[i]`` maps K_i -> K_{i-1}."""

    n: int
    ambient: PolyRing
    regular_sequence: list
    bases: list
    differentials: dict

    def d_squared_is_zero(self) -> bool:
        for i in range(2, self.n + 1):
            prod = matmul(self.differentials[i - 1], self.differentials[i], self.ambient)
            if any(e for row in prod for e in row):
                return False
        return True


def matmul(a, b, ring):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            s = ring.zero()
            for k in range(inner):
                if a[r][k] and b[k][c]:
                    s = s + a[r][k] * b[k][c]
            row.append(s)
        out.append(row)
    return out


def build_koszul(n: int) -> KoszulComplex:
    ring = PolyRing(tuple(f"y{i + 1}" for i in range(n)) + tuple(f"z{i + 1}" for i in range(n)))
    seq = [ring.gen(i) - ring.gen(n + i) for i in range(n)]
    bases = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]
    diffs = {}
    for i in range(1, n + 1):
        src, tgt = bases[i], bases[i - 1]
        index = {S: r for r, S in enumerate(tgt)}
        mat = [[ring.zero() for _ in src] for _ in tgt]
        for c, S in enumerate(src):
            for pos, k in enumerate(S):
                rest = S[:pos] + S[pos + 1:]
                entry = seq[k] if pos % 2 == 0 else -seq[k]
                mat[index[rest]][c] = entry
        diffs[i] = mat
    return KoszulComplex(n, ring, seq, bases, diffs)


def restrict_to_diagonal(p: Polynomial, n: int, ring: PolyRing) -> Polynomial:
    """Apply A (x) A -> A, y_i, z_i -> x_i."""
    return p.embed(ring, list(range(n)) + list(range(n)))


def polynomial_matrix_rank(mat) -> int:
    """Rank over the fraction field by fraction-free elimination."""
    m = [list(row) for row in mat]
    if not m or not m[0]:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            e = m[r][col]
            if e:
                m[r] = [p * a - e * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


@dataclass
class TorResult:
    rank: int
    basis: list


def koszul_tor(n: int, i: int) -> TorResult:
    """H_i of the diagonal Koszul complex tensored down to A = k[x_1..x_n]."""
    K = build_koszul(n)
    A = PolyRing(tuple(f"x{k + 1}" for k in range(n)))
    if i < 0 or i > n:
        return TorResult(0, [])

    def restricted(deg):
        if deg < 1 or deg > n:
            return []
        return [[restrict_to_diagonal(e, n, A) for e in row] for row in K.differentials[deg]]

    dim = len(K.bases[i])
    rank_out = polynomial_matrix_rank(restricted(i)) if i >= 1 else 0
    rank_in = polynomial_matrix_rank(restricted(i + 1)) if i + 1 <= n else 0
    rank = dim - rank_out - rank_in
    labels = []
    if rank == dim:
        labels = ["e" + "".join(str(k + 1) for k in S) if S else "1" for S in K.bases[i]]
    return TorResult(rank, labels)


def hkr_basis_map(n: int, i: int) -> dict:
    """e_S -> dx_S label bijection."""
    out = {}
    for S in itertools.combinations(range(n), i):
        e = "e" + "".join(str(k + 1) for k in S) if S else "1"
        dx = "^".join(f"dx{k + 1}" for k in S) if S else "1"
        out[e] = dx
    return out


def hkr_compare(n: int, i: int) -> bool:
    tor = koszul_tor(n, i)
    forms = hkr_basis_map(n, i) if 0 <= i <= n else {}
    if tor.rank != len(forms):
        return False
    return sorted(tor.basis) == sorted(forms)


def polyvector_rank(n: int, k: int) -> int:
    if k < 0:
        return 0
    return math.comb(n, k)


@dataclass
class SupportedClass:
    """Class in H^0(Z, omega^-1 (x) Omega^p|_Z) in the frame of ``fs``."""

    fs: list
    p: int
    coefficients: DifferentialForm
    hh_degree: int

    def is_zero(self) -> bool:
        return self.coefficients.is_zero()

    def scale(self, c) -> SupportedClass:
        gb = groebner_basis(Ideal(self.fs[0].ring, self.fs))
        return SupportedClass(self.fs, self.p, self.coefficients.scale(c).reduce(gb), self.hh_degree)


@dataclass
class ChernCharacter:
    multiplicity: int
    tau: SupportedClass

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def as_class(self) -> SupportedClass:
        return self.tau.scale(self.multiplicity)


def tau_class(fs: Sequence[Polynomial]) -> SupportedClass:
    fs = list(fs)
    coeffs, gb = check_regularity(fs)
    omega = DifferentialForm(fs[0].ring, len(fs), coeffs).reduce(gb)
    if omega.is_zero():
        raise AssertionError("tautological class vanished after a passing regularity check")
    return SupportedClass(fs, len(fs), omega, 0)


def chern_character(I: Ideal, fs: Sequence[Polynomial]) -> ChernCharacter:
    """ch(A/I) = dim_k(A/I) * tau for an (fs)-primary ideal I with finite quotient."""
    fs = list(fs)
    if not verify_radical_equivalence(I, Ideal(I.ring, fs)):
        raise RadicalMismatchError("sqrt(I) differs from sqrt(fs)")
    n = vector_space_dimension(I)
    if n == INFINITE:
        raise InfiniteDimensionError("A/I is infinite-dimensional; localization hypothesis fails")
    return ChernCharacter(n, tau_class(fs))


def module_action(theta: Bivector, c: SupportedClass) -> SupportedClass:
    if c.p < 2:
        raise ValueError("bivector action needs form degree >= 2")
    gb = groebner_basis(Ideal(c.fs[0].ring, c.fs))
    coeffs = contract_form(theta, c.coefficients).reduce(gb)
    return SupportedClass(c.fs, c.p - 2, coeffs, c.hh_degree - 2)


def theta_annihilates_tau(theta: Bivector, tau: SupportedClass) -> bool:
    # classes with p < 2 map to negative form degree, which is zero
    if tau.p < 2:
        return True
    return module_action(theta, tau).is_zero()


def theta_annihilates_chern(theta: Bivector, ch: ChernCharacter) -> bool:
    return theta_annihilates_tau(theta, ch.tau)


def quotient_length(I: Ideal, J: Ideal) -> int:
    """dim_k J/I for I inside J, by linear algebra in the standard-monomial basis of A/I.

    Independent of ``vector_space_dimension(J)``: spans the images of
    s * g (s standard for I, g a generator of J) and takes the rank.
    """
    std = standard_monomials(I)
    index = {m: k for k, m in enumerate(std)}
    gb = groebner_basis(I)
    rows = []
    for g in J.generators:
        for s in std:
            r = normal_form(g.mul_monomial(s), gb)
            row = [0] * len(std)
            for m, c in r.items():
                row[index[m]] = c
            rows.append(row)
    return rational_rank(rows) if rows else 0


@dataclass
class CriterionChain:
    eta_zero: bool
    contraction_zero: bool
    theta_ch_zero: bool
    multiplicity: int | None

    @property
    def agree(self) -> bool:
        return self.eta_zero == self.contraction_zero == self.theta_ch_zero


def criterion_chain(theta: Bivector, fs: Sequence[Polynomial], I: Ideal | None = None) -> CriterionChain:
    """Evaluate the three equivalent vanishing criteria for a regular sequence.

    When ``I`` is given and has finite colength, the full Chern character of
    A/I is used; otherwise the tautological class alone (the multiplicity
    never affects vanishing).
    """
    fs = list(fs)
    eta = conormal_projection(theta, fs).is_zero()
    contraction = contraction_vanishes_mod(theta, fs)
    multiplicity = None
    if I is not None and vector_space_dimension(I) != INFINITE:
        ch = chern_character(I, fs)
        multiplicity = ch.multiplicity
        theta_ch = theta_annihilates_chern(theta, ch)
    else:
        theta_ch = theta_annihilates_tau(theta, tau_class(fs))
    return CriterionChain(eta, contraction, theta_ch, multiplicity)
