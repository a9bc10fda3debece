"""Plain-text format for polynomials and matrices.

Grammar of one expression::

    expr   := term (('+' | '-') term)*
    term   := coeff ('*' factor)*
    factor := var ('^' signed-int)?
    coeff  := int | int '/' posint | '(' expr-in-params ')' '/' '(' expr-in-params ')'

The printer is strict: every term carries an explicit coefficient, terms are
emitted in descending exponent order, the sign of the first term is folded
into its coefficient token, and non-constant coefficients always use the
parenthesized quotient form.  The parser is tolerant: it also accepts a
leading sign, terms that start with a bare factor (implied coefficient 1),
a parenthesized coefficient without a quotient, and parameter names used
directly as factors.

Round-tripping print -> parse is the identity on polynomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ParseError, UnknownVariable
from .laurent import LaurentPoly, LaurentRing
from .scalar import PFElem

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError("unexpected input at %r" % (rest[:20],))
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2)))
        else:
            tokens.append(("OP", m.group(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], ring: LaurentRing):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.field = ring.field

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.take()
        if tok != ("OP", op):
            raise ParseError("expected %r, found %r" % (op, tok[1]))

    # outer expression over the ring variables

    def parse_expr(self) -> LaurentPoly:
        total = self.ring.zero
        sign = 1
        tok = self.peek()
        if tok in (("OP", "+"), ("OP", "-")):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            total = total + self.parse_term() * sign
            tok = self.peek()
            if tok is None or tok == ("OP", ")"):
                return total
            if tok == ("OP", "+"):
                sign = 1
            elif tok == ("OP", "-"):
                sign = -1
            else:
                raise ParseError("expected '+' or '-', found %r" % (tok[1],))
            self.take()

    def parse_term(self) -> LaurentPoly:
        tok = self.peek()
        if tok is None:
            raise ParseError("empty term")
        exps = {name: 0 for name in self.ring.variables}
        coeff = self.field.one
        if tok[0] == "NAME" and tok[1] in self.ring.variables:
            # bare factor with implied coefficient
            pass
        else:
            coeff = self.parse_coeff()
            tok = self.peek()
            if tok != ("OP", "*"):
                return self.ring.constant(coeff)
            self.take()
        while True:
            name, power = self.parse_factor()
            if name in exps:
                exps[name] += power
            else:
                # tolerated: a parameter used directly as a factor
                coeff = coeff * self.field.var(name) ** power
            tok = self.peek()
            if tok != ("OP", "*"):
                break
            self.take()
        exp = tuple(exps[name] for name in self.ring.variables)
        return self.ring.monomial(exp, coeff)

    def parse_factor(self) -> tuple[str, int]:
        tok = self.take()
        if tok[0] != "NAME":
            raise ParseError("expected a variable, found %r" % (tok[1],))
        name = tok[1]
        if name not in self.ring.variables and name not in self.field.params:
            raise ParseError("unknown name %r" % (name,))
        power = 1
        if self.peek() == ("OP", "^"):
            self.take()
            power = self.parse_signed_int()
        return name, power

    def parse_signed_int(self) -> int:
        sign = 1
        tok = self.take()
        if tok == ("OP", "-"):
            sign = -1
            tok = self.take()
        elif tok == ("OP", "+"):
            tok = self.take()
        if tok[0] != "INT":
            raise ParseError("expected an integer, found %r" % (tok[1],))
        return sign * int(tok[1])

    def parse_coeff(self) -> PFElem:
        tok = self.peek()
        if tok is None:
            raise ParseError("missing coefficient")
        if tok == ("OP", "-") or tok == ("OP", "+"):
            # tolerated sign directly on the coefficient
            self.take()
            inner = self.parse_coeff()
            return -inner if tok[1] == "-" else inner
        if tok[0] == "INT":
            self.take()
            value = int(tok[1])
            if self.peek() == ("OP", "/"):
                self.take()
                den_tok = self.take()
                if den_tok[0] != "INT" or int(den_tok[1]) == 0:
                    raise ParseError("expected a positive integer denominator")
                return self.field.from_fraction(Fraction(value, int(den_tok[1])))
            return self.field.from_int(value)
        if tok == ("OP", "("):
            self.take()
            num = self.parse_param_expr()
            self.expect_op(")")
            den = {(0,) * self.field.arity: 1}
            if self.peek() == ("OP", "/"):
                self.take()
                nxt = self.take()
                if nxt == ("OP", "("):
                    den = self.parse_param_expr()
                    self.expect_op(")")
                elif nxt[0] == "INT" and int(nxt[1]) != 0:
                    den = {(0,) * self.field.arity: int(nxt[1])}
                else:
                    raise ParseError("bad denominator after '/'")
            if not den:
                raise ParseError("zero denominator in coefficient")
            return self.field.element(num, den)
        raise ParseError("expected a coefficient, found %r" % (tok[1],))

    # inner expression over the parameters, integer coefficients

    def parse_param_expr(self) -> dict:
        params = self.field.params
        acc: dict[tuple, int] = {}
        sign = 1
        tok = self.peek()
        if tok in (("OP", "+"), ("OP", "-")):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        while True:
            coeff, exp = self.parse_param_term(params)
            coeff *= sign
            if coeff:
                acc[exp] = acc.get(exp, 0) + coeff
                if not acc[exp]:
                    del acc[exp]
            tok = self.peek()
            if tok is None or tok == ("OP", ")"):
                return acc
            if tok == ("OP", "+"):
                sign = 1
            elif tok == ("OP", "-"):
                sign = -1
            else:
                raise ParseError(
                    "expected '+' or '-' in coefficient, found %r" % (tok[1],)
                )
            self.take()

    def parse_param_term(self, params: tuple[str, ...]) -> tuple[int, tuple]:
        exps = {name: 0 for name in params}
        coeff = 1
        tok = self.peek()
        if tok is not None and tok[0] == "INT":
            self.take()
            coeff = int(tok[1])
            if self.peek() != ("OP", "*"):
                return coeff, tuple(exps[p] for p in params)
            self.take()
        while True:
            tok = self.take()
            if tok[0] != "NAME" or tok[1] not in exps:
                raise ParseError("expected a parameter, found %r" % (tok[1],))
            power = 1
            if self.peek() == ("OP", "^"):
                self.take()
                power = self.parse_signed_int()
            exps[tok[1]] += power
            if self.peek() != ("OP", "*"):
                break
            self.take()
        return coeff, tuple(exps[p] for p in params)


def parse_poly(text: str, ring: LaurentRing) -> LaurentPoly:
    """Parse one expression into the given ring."""
    parser = _Parser(_tokenize(text), ring)
    result = parser.parse_expr()
    if parser.peek() is not None:
        raise ParseError("trailing input at %r" % (parser.take()[1],))
    return result


# printing


def _render_zp(zp: Mapping[tuple, int], names: Sequence[str]) -> str:
    if not zp:
        return "0"
    pieces = []
    for i, exp in enumerate(sorted(zp, reverse=True)):
        coeff = zp[exp]
        mag = abs(coeff)
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append("%s^%d" % (name, e))
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if i == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append(("-" if coeff < 0 else "+") + body)
    return "".join(pieces)


def _pf_sign_and_text(c: PFElem) -> tuple[bool, str]:
    """Sign bit and the rendered magnitude of one coefficient."""
    if c.is_constant():
        value = c.as_fraction()
        neg = value < 0
        value = abs(value)
        if value.denominator == 1:
            return neg, str(value.numerator)
        return neg, "%d/%d" % (value.numerator, value.denominator)
    num, den = c.num, c.den
    neg = num[max(num)] < 0
    if neg:
        num = {e: -v for e, v in num.items()}
    params = c.field.params
    return neg, "(%s)/(%s)" % (_render_zp(num, params), _render_zp(den, params))


def render_poly(p: LaurentPoly) -> str:
    """Strict canonical rendering of one polynomial."""
    if p.is_zero():
        return "0"
    names = p.ring.variables
    pieces = []
    for i, (exp, coeff) in enumerate(
        sorted(p.terms.items(), key=lambda kv: kv[0], reverse=True)
    ):
        neg, text = _pf_sign_and_text(coeff)
        factors = [text]
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append("%s^%d" % (name, e))
        body = "*".join(factors)
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("-" if neg else "+") + body)
    return "".join(pieces)


def render_entry(value) -> str:
    """Matrix-entry rendering: bare integers, a/b rationals, or short
    parameter expressions."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return "%d/%d" % (value.numerator, value.denominator)
    if isinstance(value, PFElem):
        if value.is_constant():
            return render_entry(value.as_fraction())
        one = {(0,) * value.field.arity: 1}
        if value.den == one:
            return _render_zp(value.num, value.field.params)
        neg, text = _pf_sign_and_text(value)
        return ("-" if neg else "") + text
    raise TypeError("cannot render %r as a matrix entry" % (value,))


def render_matrix(rows: Sequence[Sequence]) -> str:
    return "[%s]" % ",".join(
        "[%s]" % ",".join(render_entry(v) for v in row) for row in rows
    )
