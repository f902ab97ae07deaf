"""Sparse multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to ``Fraction``
coefficients.  A :class:`PolyRing` fixes the variable names (and, for
cotangent rings k[x, xi], the pairing between base and fiber variables).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import ParseError, RingMismatchError, ZeroPolynomialError

MAX_EXPONENT = 2**31 - 1

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring Q[names]; ``cotangent`` pairs names[i] with names[i + n]."""

    names: tuple
    cotangent: bool = False

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if self.cotangent and len(names) % 2:
            raise ValueError("a cotangent ring needs an even number of variables")

    @property
    def arity(self) -> int:
        return len(self.names)

    @property
    def npairs(self) -> int:
        if not self.cotangent:
            raise ValueError("ring has no cotangent structure")
        return self.arity // 2

    def pairs(self):
        """Index pairs (x_i, xi_i) of a cotangent ring."""
        n = self.npairs
        return [(i, i + n) for i in range(n)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, name_or_index) -> Polynomial:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = [0] * self.arity
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def gens(self):
        return [self.gen(i) for i in range(self.arity)]

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.arity: Fraction(c)})

    def monomial(self, exps, coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exps): Fraction(coeff)})

    def extend(self, names: Sequence[str]) -> PolyRing:
        """Ring with extra variables appended (cotangent structure dropped)."""
        return PolyRing(self.names + tuple(names))

    def fresh_name(self, stem: str = "t") -> str:
        name = stem
        k = 0
        while name in self.names:
            k += 1
            name = f"{stem}{k}"
        return name

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def __str__(self):
        suffix = " cotangent" if self.cotangent else ""
        return "ring " + " ".join(self.names) + suffix


def cotangent_ring(n: int, base: Sequence[str] | None = None) -> PolyRing:
    """k[x_1..x_n, xi_1..xi_n] with the standard pairing."""
    if base is None:
        base = [f"x{i + 1}" for i in range(n)]
    fiber = ["xi" + b[1:] if b.startswith("x") else "xi_" + b for b in base]
    return PolyRing(tuple(base) + tuple(fiber), cotangent=True)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms=None):
        clean = {}
        if terms:
            n = ring.arity
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} does not fit ring of arity {n}")
                if any((not isinstance(e, int)) or e < 0 for e in m):
                    raise ValueError(f"invalid exponent vector {m}")
                if any(e > MAX_EXPONENT for e in m):
                    raise OverflowError(f"exponent overflow in {m}")
                c = Fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # trusted constructor: terms already normalized, no zero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.ring.arity, Fraction(0))

    def variables(self) -> set:
        """Indices of variables that occur in some term."""
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def degree(self, var: int | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(sum(m) for m in self._terms)
        return max(m[var] for m in self._terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

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
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

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
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * v for m, v in self._terms.items()})

    def mul_monomial(self, exps, coeff=1) -> Polynomial:
        coeff = Fraction(coeff)
        if not coeff:
            return self.ring.zero()
        out = {}
        for m, c in self._terms.items():
            out[_mono_mul(m, exps)] = c * coeff
        return Polynomial._raw(self.ring, out)

    def diff(self, var: int) -> Polynomial:
        return poly_diff(self, var)

    def subs(self, mapping: dict) -> Polynomial:
        """Substitute polynomials (same ring) for variables given by index."""
        ring = self.ring
        result = ring.zero()
        for m, c in self._terms.items():
            term = ring.const(c)
            rest = list(m)
            for i, p in mapping.items():
                if m[i]:
                    term = term * (p ** m[i])
                    rest[i] = 0
            result = result + term.mul_monomial(rest)
        return result

    def embed(self, ring: PolyRing, positions: Sequence[int] | None = None) -> Polynomial:
        """Map into ``ring``; variable i goes to ``positions[i]`` (default: same index)."""
        if positions is None:
            positions = range(self.ring.arity)
        positions = list(positions)
        out = {}
        for m, c in self._terms.items():
            e = [0] * ring.arity
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] += k
            e = tuple(e)
            out[e] = out.get(e, 0) + c
        return Polynomial(ring, out)

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self._terms:
            return self
        _, lc = leading_term(self, order or GREVLEX)
        return self.scale(1 / lc)

    def sorted_terms(self, order: MonomialOrder | None = None):
        key = (order or GREVLEX).key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return format_polynomial(self, names)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def _mono_mul(a, b):
    out = tuple(x + y for x, y in zip(a, b))
    if any(e > MAX_EXPONENT for e in out):
        raise OverflowError("exponent overflow")
    return out


def mono_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_quotient(a, b):
    """a / b for monomials with b | a."""
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialOrder:
    """Term order on exponent tuples.

    ``lex`` ranks the first variable highest; ``grevlex`` is graded reverse
    lexicographic; ``weighted`` compares the weight first and breaks ties
    with grevlex.
    """

    kind: str = "grevlex"
    weight: tuple | None = None
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "weighted":
            if self.weight is None:
                raise ValueError("weighted order needs a weight vector")
            w = tuple(int(x) for x in self.weight)
            if any(x < 0 for x in w):
                raise ValueError("weights must be non-negative")
            object.__setattr__(self, "weight", w)
        elif self.weight is not None:
            raise ValueError(f"{self.kind} order takes no weight")
        object.__setattr__(self, "key", self._make_key())

    def _make_key(self):
        if self.kind == "lex":
            return lambda m: m
        if self.kind == "grevlex":
            return _grevlex_key
        w = self.weight

        def weighted_key(m):
            if len(m) != len(w):
                raise ValueError("weight vector does not match ring arity")
            return (sum(a * b for a, b in zip(w, m)), _grevlex_key(m))

        return weighted_key

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def spec(self) -> str:
        if self.kind == "weighted":
            return "weight:" + ",".join(map(str, self.weight))
        return self.kind

    @classmethod
    def from_spec(cls, text: str) -> MonomialOrder:
        text = text.strip()
        if text in ("lex", "grevlex"):
            return cls(text)
        if text.startswith("weight:"):
            try:
                w = tuple(int(x) for x in text[len("weight:"):].split(","))
            except ValueError:
                raise ValueError(f"bad weight vector in {text!r}") from None
            return cls("weighted", w)
        raise ValueError(f"unknown monomial order {text!r}")


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def order_filtration_order(n: int) -> MonomialOrder:
    """Weight 0 on x, 1 on xi, grevlex ties: realizes the order filtration."""
    return MonomialOrder("weighted", (0,) * n + (1,) * n)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    out = {}
    for m1, c1 in f._terms.items():
        for m2, c2 in g._terms.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    return Polynomial._raw(f.ring, out)


def poly_diff(f: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < f.ring.arity:
        raise IndexError(f"variable index {var_index} out of range for {f.ring}")
    out = {}
    for m, c in f._terms.items():
        e = m[var_index]
        if e:
            dm = m[:var_index] + (e - 1,) + m[var_index + 1:]
            out[dm] = c * e
    return Polynomial._raw(f.ring, out)


def leading_term(f: Polynomial, order: MonomialOrder = GREVLEX):
    """(monomial, coefficient) of the order-maximal term of ``f``."""
    if not f._terms:
        raise ZeroPolynomialError("zero polynomial has no leading term")
    m = max(f._terms, key=order.key)
    return m, f._terms[m]


def leading_monomial(f: Polynomial, order: MonomialOrder = GREVLEX):
    return leading_term(f, order)[0]


# -- exact division and gcd -------------------------------------------------

def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g; raises ArithmeticError if g does not divide f."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    q, r = _divmod_single(f, g, LEX)
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def _divmod_single(f, g, order):
    gm, gc = leading_term(g, order)
    rest = {m: c for m, c in g._terms.items() if m != gm}
    p = dict(f._terms)
    q = {}
    r = {}
    while p:
        m = max(p, key=order.key)
        c = p.pop(m)
        if mono_divides(gm, m):
            s = mono_quotient(m, gm)
            k = c / gc
            q[s] = k
            for rm, rc in rest.items():
                t = _mono_mul(rm, s)
                v = p.get(t, 0) - k * rc
                if v:
                    p[t] = v
                else:
                    p.pop(t, None)
        else:
            r[m] = c
    return Polynomial._raw(f.ring, q), Polynomial._raw(f.ring, r)


def _coeffs_in(f: Polynomial, var: int) -> dict:
    """Coefficients of f as a polynomial in variable ``var``: degree -> poly."""
    out = {}
    for m, c in f._terms.items():
        d = m[var]
        stripped = m[:var] + (0,) + m[var + 1:]
        out.setdefault(d, {})[stripped] = c
    return {d: Polynomial._raw(f.ring, t) for d, t in out.items()}


def _content(f: Polynomial, var: int) -> Polynomial:
    g = f.ring.zero()
    for c in _coeffs_in(f, var).values():
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _prem(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """Pseudo-remainder of f by g as univariate polynomials in ``var``."""
    d = g.degree(var)
    lc = _coeffs_in(g, var)[d]
    r = f
    while r and r.degree(var) >= d:
        e = r.degree(var)
        lr = _coeffs_in(r, var)[e]
        shift = [0] * f.ring.arity
        shift[var] = e - d
        r = lc * r - (lr * g).mul_monomial(shift)
    return r


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic (grevlex) gcd by content / primitive-part recursion.

    Plain primitive PRS, one variable at a time; fine at desk scale, not
    tuned for large inputs.
    """
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring} vs {g.ring}")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    fv, gv = f.variables(), g.variables()
    var = min(fv | gv)
    if var not in gv:
        return poly_gcd(_content(f, var), g)
    if var not in fv:
        return poly_gcd(f, _content(g, var))
    cf, cg = _content(f, var), _content(g, var)
    c = poly_gcd(cf, cg)
    a = divide_exact(f, cf)
    b = divide_exact(g, cg)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while b:
        r = _prem(a, b, var)
        a = b
        if r:
            b = divide_exact(r, _content(r, var))
        else:
            b = r
    a = divide_exact(a, _content(a, var))
    return (c * a).monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    """f / gcd(f, df/dx_1, ..., df/dx_n), normalized monic."""
    if not f:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    g = f
    for i in sorted(f.variables()):
        g = poly_gcd(g, poly_diff(f, i))
        if g.is_constant():
            break
    return divide_exact(f, g).monic()


# -- text grammar -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start + 1))
        pos = m.end()
    tokens.append(("end", "", n + 1))
    return tokens


def parse_terms(text: str):
    """Parse the shared term grammar.

    Returns a list of ``(coefficient, factors, column)`` where ``factors`` is a
    list of ``(name, exponent, column)`` in written order.  Callers decide how
    to multiply the factors (commutatively or in the Weyl algebra).
    """
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take(kind=None, value=None):
        nonlocal i
        tok = tokens[i]
        if kind and tok[0] != kind or value and tok[1] != value:
            what = tok[1] or "end of input"
            raise ParseError(f"expected {value or kind}, found {what!r}", 1, tok[2])
        i += 1
        return tok

    def posint(tok):
        return int(tok[1])

    terms = []
    sign = 1
    tok = peek()
    if tok[0] == "op" and tok[1] in "+-":
        sign = -1 if tok[1] == "-" else 1
        take()
    if peek()[0] == "end":
        raise ParseError("empty expression", 1, peek()[2])
    while True:
        col = peek()[2]
        coef = Fraction(sign)
        factors = []
        tok = peek()
        if tok[0] == "num":
            take()
            num = int(tok[1])
            if peek() == ("op", "/", peek()[2]):
                take()
                den_tok = take("num")
                den = posint(den_tok)
                if den == 0:
                    raise ParseError("zero denominator", 1, den_tok[2])
                coef *= Fraction(num, den)
            else:
                coef *= num
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                factors.append(_parse_factor(take, peek))
        else:
            factors.append(_parse_factor(take, peek))
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            factors.append(_parse_factor(take, peek))
        terms.append((coef, factors, col))
        tok = peek()
        if tok[0] == "end":
            break
        if tok[0] == "op" and tok[1] in "+-":
            take()
            sign = -1 if tok[1] == "-" else 1
            continue
        raise ParseError(f"unexpected {tok[1]!r}", 1, tok[2])
    return terms


def _parse_factor(take, peek):
    tok = peek()
    if tok[0] == "num":
        raise ParseError("coefficient must come first in a term", 1, tok[2])
    name_tok = take("name")
    exp = 1
    if peek()[0] == "op" and peek()[1] == "^":
        caret = take()
        nxt = peek()
        if nxt[0] != "num":
            raise ParseError("dangling '^': exponent expected", 1, caret[2])
        take()
        exp = int(nxt[1])
    return (name_tok[1], exp, name_tok[2])


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse e.g. ``x^2*y + 3/2*y - 1`` into a polynomial of ``ring``."""
    out = {}
    n = ring.arity
    for coef, factors, _ in parse_terms(text):
        e = [0] * n
        for name, exp, col in factors:
            if name not in ring.names:
                raise ParseError(f"unknown variable {name!r}", 1, col)
            e[ring.names.index(name)] += exp
        e = tuple(e)
        out[e] = out.get(e, 0) + coef
    return Polynomial(ring, out)


def format_coefficient(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_term(c: Fraction, factors: list[str]) -> str:
    """Render a signed term (sign included) from a coefficient and factor strings."""
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if not factors:
        body = format_coefficient(a)
    elif a == 1:
        body = "*".join(factors)
    else:
        body = format_coefficient(a) + "*" + "*".join(factors)
    return sign + body


def join_terms(signed: list[str]) -> str:
    if not signed:
        return "0"
    out = signed[0][1:] if signed[0][0] == "+" else signed[0]
    for s in signed[1:]:
        out += f" {s[0]} {s[1:]}"
    return out


def format_polynomial(f: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text form: terms by descending grevlex, variables in ring order."""
    names = names or f.ring.names
    signed = []
    for m, c in f.sorted_terms(GREVLEX):
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, m) if e]
        signed.append(format_term(c, factors))
    return join_terms(signed)


def polys(ring: PolyRing, *texts: str) -> list:
    return [parse_polynomial(t, ring) for t in texts]


def total_variables(fs: Iterable[Polynomial]) -> set:
    used = set()
    for f in fs:
        used |= f.variables()
    return used
