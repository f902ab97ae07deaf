"""Parser for the ``;``-terminated stanza input format.

Example::

    ring x1 x2 xi1 xi2 cotangent;
    dmodule M = d1^2, x2*d2;
    check gabber;

Statements: ``ring``, ``ideal NAME = ...``, ``dmodule NAME = ...``,
``bracket canonical`` / ``bracket {a,b} = ...``, ``radical user = ...``,
``check gabber``.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .polyarith import PolyRing, parse_polynomial
from .weylalg import format_operator, parse_operator

CHECKS = ("gabber",)


@dataclass
class Problem:
    ring: PolyRing
    ideals: list = field(default_factory=list)
    dmodules: list = field(default_factory=list)
    bracket: object = None
    radical_user: tuple | None = None
    checks: list = field(default_factory=list)

    @property
    def base_names(self):
        return self.ring.names[: self.ring.npairs]

    def ideal(self, name: str | None = None):
        return _lookup(self.ideals, name, "ideal")

    def dmodule(self, name: str | None = None):
        return _lookup(self.dmodules, name, "dmodule")

    def echo(self) -> str:
        """Canonical text; parsing it back yields an equal problem."""
        lines = [str(self.ring) + ";"]
        for name, gens in self.ideals:
            lines.append(f"ideal {name} = " + ", ".join(g.to_string() for g in gens) + ";")
        for name, ops in self.dmodules:
            lines.append(f"dmodule {name} = " + ", ".join(format_operator(op, self.base_names) for op in ops) + ";")
        if self.bracket == "canonical":
            lines.append("bracket canonical;")
        elif self.bracket is not None:
            names = self.ring.names
            for (i, j), c in sorted(self.bracket.items()):
                lines.append(f"bracket {{{names[i]},{names[j]}}} = {c};")
        if self.radical_user is not None:
            lines.append("radical user = " + ", ".join(g.to_string() for g in self.radical_user) + ";")
        for chk in self.checks:
            lines.append(f"check {chk};")
        return "\n".join(lines) + "\n"


def _lookup(items, name, what):
    if not items:
        raise LookupError(f"no {what} declared")
    if name is None:
        return items[0]
    for entry in items:
        if entry[0] == name:
            return entry
    raise LookupError(f"no {what} named {name!r}")


def _line_col(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _strip_comments(text):
    # blank out comments so offsets stay valid
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def _statements(text):
    clean = _strip_comments(text)
    start = 0
    for k, ch in enumerate(clean):
        if ch == ";":
            yield start, clean[start:k]
            start = k + 1
    tail = clean[start:]
    if tail.strip():
        offset = start + (len(tail) - len(tail.lstrip()))
        raise ParseError("statement not terminated by ';'", *_line_col(text, offset))


_IDENT = r"[A-Za-z_][A-Za-z_0-9]*"
_ASSIGN_RE = re.compile(rf"\s*(ideal|dmodule)\s+({_IDENT})\s*=(.*)\Z", re.S)
_BRACKET_RE = re.compile(rf"\s*bracket\s*\{{\s*({_IDENT})\s*,\s*({_IDENT})\s*\}}\s*=(.*)\Z", re.S)


def _items(text, body, body_offset, parse_one):
    """Split a comma list and parse each item, re-basing error positions."""
    out = []
    pos = 0
    for piece in body.split(","):
        lead = len(piece) - len(piece.lstrip())
        item_offset = body_offset + pos + lead
        if not piece.strip():
            raise ParseError("empty list item", *_line_col(text, item_offset))
        try:
            out.append(parse_one(piece.strip()))
        except ParseError as err:
            line, col = _line_col(text, item_offset + err.column - 1)
            raise ParseError(err.message, line, col) from None
        pos += len(piece) + 1
    return out


def parse_input(text: str) -> Problem:
    ring = None
    problem = None
    seen = set()
    for offset, stmt in _statements(text):
        if not stmt.strip():
            continue
        lead = len(stmt) - len(stmt.lstrip())
        where = _line_col(text, offset + lead)
        words = stmt.split()
        head = words[0]
        if head == "ring":
            if ring is not None:
                raise ParseError("ring declared twice", *where)
            names = words[1:]
            cot = bool(names) and names[-1] == "cotangent"
            if cot:
                names = names[:-1]
            try:
                ring = PolyRing(tuple(names), cotangent=cot)
            except ValueError as err:
                raise ParseError(str(err), *where) from None
            problem = Problem(ring)
            continue
        if problem is None:
            raise ParseError(f"'{head}' before the ring declaration", *where)
        if head in ("ideal", "dmodule"):
            m = _ASSIGN_RE.match(stmt)
            if not m:
                raise ParseError(f"malformed {head} statement", *where)
            kind, name, body = m.group(1), m.group(2), m.group(3)
            if (kind, name) in seen:
                raise ParseError(f"{kind} {name!r} declared twice", *where)
            seen.add((kind, name))
            body_offset = offset + m.start(3)
            if kind == "ideal":
                gens = _items(text, body, body_offset, lambda s: parse_polynomial(s, ring))
                problem.ideals.append((name, tuple(gens)))
            else:
                if not ring.cotangent:
                    raise ParseError("dmodule needs a cotangent ring", *where)
                base = ring.names[: ring.npairs]
                ops = _items(text, body, body_offset, lambda s: parse_operator(s, base_names=base))
                if any(not op for op in ops):
                    raise ParseError("dmodule generators must be nonzero", *where)
                problem.dmodules.append((name, tuple(ops)))
        elif head == "bracket":
            if words[1:] == ["canonical"]:
                if problem.bracket is not None:
                    raise ParseError("bracket declared twice", *where)
                if not ring.cotangent:
                    raise ParseError("canonical bracket needs a cotangent ring", *where)
                problem.bracket = "canonical"
                continue
            m = _BRACKET_RE.match(stmt)
            if not m:
                raise ParseError("malformed bracket statement", *where)
            if problem.bracket == "canonical":
                raise ParseError("bracket table mixed with canonical bracket", *where)
            a, b = m.group(1), m.group(2)
            for v in (a, b):
                if v not in ring.names:
                    raise ParseError(f"unknown variable {v!r}", *where)
            i, j = ring.index(a), ring.index(b)
            if i == j:
                raise ParseError("bracket of a variable with itself", *where)
            (val,) = _items(text, m.group(3), offset + m.start(3), lambda s: parse_polynomial(s, ring))
            if i > j:
                i, j, val = j, i, -val
            table = problem.bracket if isinstance(problem.bracket, dict) else {}
            if (i, j) in table:
                raise ParseError("bracket entry declared twice", *where)
            table[(i, j)] = val
            problem.bracket = table
        elif head == "radical":
            m = re.match(r"\s*radical\s+user\s*=(.*)\Z", stmt, re.S)
            if not m:
                raise ParseError("malformed radical statement (expected 'radical user = ...')", *where)
            if problem.radical_user is not None:
                raise ParseError("radical declared twice", *where)
            gens = _items(text, m.group(1), offset + m.start(1), lambda s: parse_polynomial(s, ring))
            if any(not g for g in gens):
                raise ParseError("radical generators must be nonzero", *where)
            problem.radical_user = tuple(gens)
        elif head == "check":
            if len(words) != 2 or words[1] not in CHECKS:
                raise ParseError(f"unknown check {' '.join(words[1:])!r}", *where)
            problem.checks.append(words[1])
        else:
            raise ParseError(f"unknown statement {head!r}", *where)
    if problem is None:
        raise ParseError("missing ring declaration", 1, 1)
    return problem


