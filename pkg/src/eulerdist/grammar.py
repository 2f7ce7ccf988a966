"""Textual grammar for polynomials in theta and for structured distributions.

Polynomial grammar: variables t1..t9 (the Euler fields theta_1..theta_9),
integer and rational literals (3, 3/4), operators + - * ^ with ^ binding
tighter than * tighter than +/-, parentheses, unary minus, free whitespace.

Distribution grammar: a sum of terms; each term is an optional rational
coefficient times a product of coordinate factors

    x<j>^<int>      monomial power (negative exponent means the finite
                    part under the regularization convention)
    log(x<j>)^<p>   logarithm power, p >= 1
    H(x<j>)         right half-line indicator
    H(-x<j>)        left half-line indicator
    delta(x<j>,<k>) k-th derivative of the delta at the origin
    mono(x<j>,<n>)  full-line monomial sugar, n >= 0

Factors naming one coordinate combine into a single half-line or delta atom
for that coordinate; a delta cannot be combined with anything else there
(CoordinateConflict).  In a group carrying H(-x<j>), powers and logs refer
to |x_j|, matching the reflected-atom convention.  A group with no H factor
denotes the full-line object and expands into the two half-line atoms with
the parity sign (-1)^n on the left piece.  Coordinates absent from a term
default to the full-line constant 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .atoms import Delta, DistExpr, MonLog, TensorTerm, dist
from .errors import CoordinateConflict, DimensionError, ParseError
from .poly import Polynomial

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z]+\d*)|(?P<op>[-+*^(),/]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "name" | one of "+-*^(),/" | "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if m is None:
            stripped = src[i:].lstrip()
            if not stripped:
                break
            bad = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[bad]!r}", bad)
        if m.group("num") is not None:
            tokens.append(_Token("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(_Token("name", m.group("name"), m.start("name")))
        else:
            tokens.append(_Token(m.group("op"), m.group("op"), m.start("op")))
        i = m.end()
    tokens.append(_Token("end", "", len(src)))
    return tokens


class _Cursor:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {self.tok.text or 'end of input'!r}",
                self.tok.pos,
            )
        return self.advance()

    def fail(self, expected: str) -> ParseError:
        found = self.tok.text or "end of input"
        return ParseError(f"expected {expected}, found {found!r}", self.tok.pos)


# -- polynomials -----------------------------------------------------------


def _var_index(name: str, prefix: str, cur: _Cursor) -> int:
    if not name.startswith(prefix) or not name[len(prefix) :].isdigit():
        raise cur.fail(f"a {prefix}<j> variable")
    j = int(name[len(prefix) :])
    if not 1 <= j <= 9:
        raise ParseError(f"variable index out of range 1..9: {name}", cur.tok.pos)
    return j


def _poly_atom(cur: _Cursor, dim: int) -> Polynomial:
    t = cur.tok
    if t.kind == "(":
        cur.advance()
        p = _poly_sum(cur, dim)
        cur.expect(")")
        return p
    if t.kind == "-":
        cur.advance()
        return -_poly_atom(cur, dim)
    if t.kind == "num":
        cur.advance()
        value = Fraction(int(t.text))
        if cur.tok.kind == "/":
            cur.advance()
            den = cur.expect("num")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.pos)
            value /= int(den.text)
        return Polynomial.constant(dim, value)
    if t.kind == "name":
        j = _var_index(t.text, "t", cur)
        if j > dim:
            raise DimensionError(f"variable t{j} exceeds dimension {dim}")
        cur.advance()
        return Polynomial.variable(dim, j)
    raise cur.fail("a number, variable, or '('")


def _poly_power(cur: _Cursor, dim: int) -> Polynomial:
    base = _poly_atom(cur, dim)
    if cur.tok.kind == "^":
        cur.advance()
        exp = cur.expect("num")
        return base ** int(exp.text)
    return base


def _poly_product(cur: _Cursor, dim: int) -> Polynomial:
    p = _poly_power(cur, dim)
    while cur.tok.kind == "*":
        cur.advance()
        p = p * _poly_power(cur, dim)
    return p


def _poly_sum(cur: _Cursor, dim: int) -> Polynomial:
    p = _poly_product(cur, dim)
    while cur.tok.kind in "+-":
        op = cur.advance()
        q = _poly_product(cur, dim)
        p = p + q if op.kind == "+" else p - q
    return p


def _max_t_index(src: str) -> int:
    best = 0
    for m in re.finditer(r"\bt(\d+)\b", src):
        best = max(best, int(m.group(1)))
    return best


def parse_poly(src: str, dim: int | None = None) -> Polynomial:
    """Parse a polynomial in t1..t9; dim defaults to the largest index used."""
    if dim is None:
        dim = max(1, _max_t_index(src))
    cur = _Cursor(src)
    p = _poly_sum(cur, dim)
    if cur.tok.kind != "end":
        raise cur.fail("end of input or an operator")
    return p


def format_poly(P: Polynomial) -> str:
    """Canonical text form; parse_poly(format_poly(P)) == P."""
    if P.is_zero():
        return "0"
    pieces = []
    for alpha, c in P.sorted_terms():
        factors = []
        for j, a in enumerate(alpha, start=1):
            if a == 1:
                factors.append(f"t{j}")
            elif a > 1:
                factors.append(f"t{j}^{a}")
        mag = abs(c)
        coeff_txt = str(mag)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([coeff_txt] + factors)
        else:
            body = coeff_txt
        pieces.append(("- " if c < 0 else "+ ") + body)
    head = pieces[0]
    head = ("-" + head[2:]) if head.startswith("- ") else head[2:]
    return " ".join([head] + pieces[1:])


# -- distributions ---------------------------------------------------------


@dataclass
class _Group:
    """Factors accumulated for one coordinate inside a term."""

    n: int | None = None
    p: int = 0
    h: int | None = None  # +1, -1, or None (full line)
    delta: int | None = None
    mono: int | None = None

    def conflict(self, pos: int, what: str):
        raise CoordinateConflict(f"{what} (at offset {pos})")


def _coord_index(cur: _Cursor, d: int) -> int:
    name = cur.expect("name")
    if not name.text.startswith("x") or not name.text[1:].isdigit():
        raise ParseError(f"expected x<j>, found {name.text!r}", name.pos)
    j = int(name.text[1:])
    if not 1 <= j <= d:
        raise DimensionError(f"coordinate x{j} exceeds dimension {d}")
    return j


def _signed_int(cur: _Cursor) -> int:
    sign = 1
    if cur.tok.kind == "-":
        cur.advance()
        sign = -1
    return sign * int(cur.expect("num").text)


def _dist_factor(cur: _Cursor, d: int, groups: dict[int, _Group], pos: int):
    t = cur.expect("name")
    name = t.text
    if name.startswith("x") and name[1:].isdigit():
        j = int(name[1:])
        if not 1 <= j <= d:
            raise DimensionError(f"coordinate x{j} exceeds dimension {d}")
        n = 1
        if cur.tok.kind == "^":
            cur.advance()
            n = _signed_int(cur)
        g = groups.setdefault(j, _Group())
        if g.delta is not None or g.mono is not None or g.n is not None:
            g.conflict(t.pos, f"power factor conflicts with an earlier factor for x{j}")
        g.n = n
        return
    if name == "log":
        cur.expect("(")
        j = _coord_index(cur, d)
        cur.expect(")")
        p = 1
        if cur.tok.kind == "^":
            cur.advance()
            p = int(cur.expect("num").text)
            if p < 1:
                raise ParseError("log power must be >= 1", t.pos)
        g = groups.setdefault(j, _Group())
        if g.delta is not None or g.mono is not None or g.p:
            g.conflict(t.pos, f"log factor conflicts with an earlier factor for x{j}")
        g.p = p
        return
    if name == "H":
        cur.expect("(")
        s = 1
        if cur.tok.kind == "-":
            cur.advance()
            s = -1
        j = _coord_index(cur, d)
        cur.expect(")")
        g = groups.setdefault(j, _Group())
        if g.delta is not None or g.mono is not None or g.h is not None:
            g.conflict(t.pos, f"half-line factor conflicts with an earlier factor for x{j}")
        g.h = s
        return
    if name == "delta":
        cur.expect("(")
        j = _coord_index(cur, d)
        cur.expect(",")
        k = int(cur.expect("num").text)
        cur.expect(")")
        g = groups.setdefault(j, _Group())
        if g.delta is not None or g.mono is not None or g.n is not None or g.p or g.h is not None:
            g.conflict(t.pos, f"delta combined with another factor for x{j}")
        g.delta = k
        return
    if name == "mono":
        cur.expect("(")
        j = _coord_index(cur, d)
        cur.expect(",")
        n = _signed_int(cur)
        cur.expect(")")
        if n < 0:
            raise ParseError("mono needs a nonnegative exponent", t.pos)
        g = groups.setdefault(j, _Group())
        if g.delta is not None or g.mono is not None or g.n is not None or g.p or g.h is not None:
            g.conflict(t.pos, f"mono combined with another factor for x{j}")
        g.mono = n
        return
    raise ParseError(
        f"expected a factor (x<j>, log, H, delta, mono), found {name!r}", t.pos
    )


def _group_atoms(g: _Group) -> list[tuple[Fraction, object]]:
    """Expand one coordinate group into (coefficient, atom) alternatives."""
    if g.delta is not None:
        return [(Fraction(1), Delta(g.delta))]
    if g.mono is not None:
        n = g.mono
        return [
            (Fraction(1), MonLog(n, 0, 1)),
            (Fraction(-1 if n % 2 else 1), MonLog(n, 0, -1)),
        ]
    n = g.n if g.n is not None else 0
    if g.h is not None:
        return [(Fraction(1), MonLog(n, g.p, g.h))]
    return [
        (Fraction(1), MonLog(n, g.p, 1)),
        (Fraction(-1 if n % 2 else 1), MonLog(n, g.p, -1)),
    ]


def _dist_term(cur: _Cursor, d: int) -> list[TensorTerm]:
    coeff = Fraction(1)
    groups: dict[int, _Group] = {}
    saw_factor = False
    while True:
        t = cur.tok
        if t.kind == "num":
            cur.advance()
            value = Fraction(int(t.text))
            if cur.tok.kind == "/":
                cur.advance()
                den = cur.expect("num")
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.pos)
                value /= int(den.text)
            coeff *= value
        elif t.kind == "name":
            _dist_factor(cur, d, groups, t.pos)
            saw_factor = True
        else:
            raise cur.fail("a coefficient or factor")
        if cur.tok.kind == "*":
            cur.advance()
            continue
        break
    if not groups and not saw_factor and coeff == 0:
        return []
    alternatives = [_group_atoms(groups.get(j, _Group())) for j in range(1, d + 1)]
    terms = []
    for combo in product(*alternatives):
        c = coeff
        factors = []
        for fc, atom in combo:
            c *= fc
            factors.append(atom)
        terms.append(TensorTerm(c, tuple(factors)))
    return terms


def parse_dist(src: str, d: int) -> DistExpr:
    """Parse a distribution expression of dimension d into canonical form."""
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    cur = _Cursor(src)
    terms: list[TensorTerm] = []
    sign = Fraction(1)
    if cur.tok.kind == "-":
        cur.advance()
        sign = Fraction(-1)
    elif cur.tok.kind == "+":
        cur.advance()
    while True:
        for t in _dist_term(cur, d):
            terms.append(TensorTerm(sign * t.coeff, t.factors))
        if cur.tok.kind in "+-":
            sign = Fraction(1) if cur.tok.kind == "+" else Fraction(-1)
            cur.advance()
            continue
        break
    if cur.tok.kind != "end":
        raise cur.fail("end of input, '+', or '-'")
    return dist(d, terms)


def _format_atom(j: int, a) -> str:
    if isinstance(a, Delta):
        return f"delta(x{j},{a.k})"
    parts = []
    if a.n != 0:
        parts.append(f"x{j}" if a.n == 1 else f"x{j}^{a.n}")
    if a.p:
        parts.append(f"log(x{j})" if a.p == 1 else f"log(x{j})^{a.p}")
    parts.append(f"H(x{j})" if a.s == 1 else f"H(-x{j})")
    return "*".join(parts)


def format_dist(e: DistExpr) -> str:
    """Canonical text form; parse_dist(format_dist(e), e.dim) == e."""
    if e.is_zero():
        return "0"
    pieces = []
    for t in e.terms:
        factors = [_format_atom(j, a) for j, a in enumerate(t.factors, start=1)]
        mag = abs(t.coeff)
        if mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("- " if t.coeff < 0 else "+ ") + body)
    head = pieces[0]
    head = ("-" + head[2:]) if head.startswith("- ") else head[2:]
    return " ".join([head] + pieces[1:])
