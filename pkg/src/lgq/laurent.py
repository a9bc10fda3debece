"""Laurent polynomials and unreduced rational expressions.

A ``LaurentRing`` fixes an ordered tuple of variable names and a coefficient
``ParamField``.  A ``LaurentPoly`` maps integer exponent tuples (negative
entries allowed) to nonzero field elements.  A ``RationalExpr`` is a plain
numerator/denominator pair of Laurent polynomials; it is never simplified
automatically, and equality is decided by cross multiplication.

All operations return fresh objects and never mutate inputs.  Iteration over
terms is in sorted exponent order so printing and hashing-free comparisons
are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import (
    ParameterMismatch,
    PoleAtPoint,
    UnknownVariable,
    VarSetMismatch,
    ZeroDenominator,
)
from .scalar import CubicElem, CubicExt, ParamField, PFElem, specialize_param

Exponent = tuple
CoeffLike = Union[PFElem, Fraction, int]


class LaurentRing:
    """Laurent polynomial ring over a parameter field."""

    __slots__ = ("_vars", "_field", "_zero", "_one")

    def __init__(self, variables, field: ParamField):
        names = tuple(variables)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        for name in names:
            if not name or name in field.params:
                raise ValueError("bad variable name: %r" % (name,))
        self._vars = names
        self._field = field
        self._zero = LaurentPoly(self, {})
        self._one = LaurentPoly(self, {(0,) * len(names): field.one})

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def field(self) -> ParamField:
        return self._field

    @property
    def arity(self) -> int:
        return len(self._vars)

    @property
    def zero(self) -> "LaurentPoly":
        return self._zero

    @property
    def one(self) -> "LaurentPoly":
        return self._one

    def index(self, name: str) -> int:
        try:
            return self._vars.index(name)
        except ValueError:
            raise UnknownVariable(
                "variable %r not in ring over %r" % (name, self._vars)
            ) from None

    def var(self, name: str, power: int = 1) -> "LaurentPoly":
        idx = self.index(name)
        exp = tuple(power if i == idx else 0 for i in range(self.arity))
        return LaurentPoly(self, {exp: self._field.one})

    def monomial(self, exp: Iterable[int], coeff: CoeffLike = 1) -> "LaurentPoly":
        exp = tuple(exp)
        if len(exp) != self.arity:
            raise VarSetMismatch("exponent arity %d != %d" % (len(exp), self.arity))
        c = self._field.coerce(coeff)
        if c.is_zero():
            return self._zero
        return LaurentPoly(self, {exp: c})

    def constant(self, value: CoeffLike) -> "LaurentPoly":
        return self.monomial((0,) * self.arity, value)

    def poly(self, terms: Mapping[Exponent, CoeffLike]) -> "LaurentPoly":
        data = {}
        for exp, coeff in terms.items():
            exp = tuple(exp)
            if len(exp) != self.arity:
                raise VarSetMismatch(
                    "exponent arity %d != %d" % (len(exp), self.arity)
                )
            c = self._field.coerce(coeff)
            if not c.is_zero():
                data[exp] = data[exp] + c if exp in data else c
        return LaurentPoly(self, {e: c for e, c in data.items() if not c.is_zero()})

    def coerce(self, value) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            if value.ring != self:
                raise VarSetMismatch(
                    "polynomial over %r used in ring over %r"
                    % (value.ring.variables, self._vars)
                )
            return value
        return self.constant(self._field.coerce(value))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentRing)
            and other._vars == self._vars
            and other._field == self._field
        )

    def __hash__(self) -> int:
        return hash(("LaurentRing", self._vars, self._field))

    def __repr__(self) -> str:
        return "LaurentRing(%s; %s)" % (
            ",".join(self._vars),
            ",".join(self._field.params),
        )


class LaurentPoly:
    """Finite sum of terms coeff * monomial, exponents possibly negative."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def items(self) -> list[tuple[Exponent, PFElem]]:
        return [(e, self.terms[e]) for e in sorted(self.terms)]

    def coeff(self, exp: Iterable[int]) -> PFElem:
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zeros = (0,) * self.ring.arity
        return all(e == zeros for e in self.terms)

    def constant_value(self) -> PFElem:
        if not self.is_constant():
            raise ValueError("polynomial %r is not constant" % (self,))
        return self.coeff((0,) * self.ring.arity)

    def min_exponent(self, name: str) -> int:
        """Smallest exponent of one variable across the support (0 if empty)."""
        idx = self.ring.index(name)
        if not self.terms:
            return 0
        return min(e[idx] for e in self.terms)

    def max_exponent(self, name: str) -> int:
        idx = self.ring.index(name)
        if not self.terms:
            return 0
        return max(e[idx] for e in self.terms)

    def is_laurent_free(self) -> bool:
        """True when no exponent is negative."""
        return all(v >= 0 for e in self.terms for v in e)

    def mentions(self, name: str) -> bool:
        idx = self.ring.index(name)
        return any(e[idx] != 0 for e in self.terms)

    # arithmetic

    def _coerce(self, other) -> "LaurentPoly":
        return self.ring.coerce(other)

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, RationalExpr):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            if exp in out:
                s = out[exp] + coeff
                if s.is_zero():
                    del out[exp]
                else:
                    out[exp] = s
            else:
                out[exp] = coeff
        return LaurentPoly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, RationalExpr):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, RationalExpr):
            return NotImplemented
        if isinstance(other, (int, Fraction, PFElem)):
            c = self.ring.field.coerce(other)
            if c.is_zero():
                return self.ring.zero
            return LaurentPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if exp in out:
                    s = out[exp] + prod
                    if s.is_zero():
                        del out[exp]
                    else:
                        out[exp] = s
                elif not prod.is_zero():
                    out[exp] = prod
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if not isinstance(e, int):
            raise TypeError("exponent must be int")
        if e < 0:
            if len(self.terms) == 1:
                (exp, coeff), = self.terms.items()
                return LaurentPoly(
                    self.ring,
                    {tuple(v * e for v in exp): coeff ** e},
                )
            raise ZeroDenominator(
                "negative power of a non-monomial; use RationalExpr"
            )
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other) -> "RationalExpr":
        if isinstance(other, RationalExpr):
            return RationalExpr(self, self.ring.one) / other
        other = self._coerce(other)
        return RationalExpr(self, other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, PFElem)):
            other = self._coerce(other)
        elif isinstance(other, RationalExpr):
            return other == self
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.ring != self.ring:
            raise VarSetMismatch("comparing polynomials over different rings")
        if set(self.terms) != set(other.terms):
            return False
        return all(other.terms[e] == c for e, c in self.terms.items())

    __hash__ = None

    def __repr__(self) -> str:
        from .polytext import render_poly

        return render_poly(self)


class RationalExpr:
    """Quotient of two Laurent polynomials, kept unreduced."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if num.ring != den.ring:
            raise VarSetMismatch("numerator and denominator over different rings")
        if den.is_zero():
            raise ZeroDenominator("rational expression with zero denominator")
        self.num = num
        self.den = den

    @property
    def ring(self) -> LaurentRing:
        return self.num.ring

    def _coerce(self, other) -> "RationalExpr":
        if isinstance(other, RationalExpr):
            if other.ring != self.ring:
                raise VarSetMismatch("expressions over different rings")
            return other
        return RationalExpr(self.ring.coerce(other), self.ring.one)

    def __add__(self, other) -> "RationalExpr":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalExpr(self.num + other.num, self.den)
        return RationalExpr(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other) -> "RationalExpr":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalExpr":
        return self._coerce(other) - self

    def __neg__(self) -> "RationalExpr":
        return RationalExpr(-self.num, self.den)

    def __mul__(self, other) -> "RationalExpr":
        other = self._coerce(other)
        return RationalExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalExpr":
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero expression")
        return RationalExpr(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalExpr":
        return self._coerce(other) / self

    def __pow__(self, e: int) -> "RationalExpr":
        if e < 0:
            if self.num.is_zero():
                raise ZeroDenominator("negative power of the zero expression")
            return RationalExpr(self.den, self.num) ** (-e)
        result = RationalExpr(self.ring.one, self.ring.one)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalExpr):
            try:
                other = self._coerce(other)
            except (TypeError, ParameterMismatch):
                return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_poly(self) -> LaurentPoly:
        """Exact quotient when the denominator is a monomial times a unit of
        the kind that divides the numerator termwise; general quotients stay
        rational."""
        num, den = self.num, self.den
        if len(den.terms) != 1:
            raise ValueError("denominator is not a monomial")
        (dexp, dcoeff), = den.terms.items()
        inv = dcoeff.inverse()
        return LaurentPoly(
            num.ring,
            {
                tuple(a - b for a, b in zip(e, dexp)): c * inv
                for e, c in num.terms.items()
            },
        )

    def __repr__(self) -> str:
        return "(%r) / (%r)" % (self.num, self.den)


# calculus and structural operations


def partial_derivative(p: LaurentPoly, name: str) -> LaurentPoly:
    """Formal partial derivative with respect to one variable."""
    idx = p.ring.index(name)
    out = {}
    for exp, coeff in p.terms.items():
        k = exp[idx]
        if k == 0:
            continue
        new = exp[:idx] + (k - 1,) + exp[idx + 1 :]
        c = coeff * k
        if new in out:
            c = out[new] + c
        if c.is_zero():
            out.pop(new, None)
        else:
            out[new] = c
    return LaurentPoly(p.ring, out)


def rational_partial(expr: RationalExpr, name: str) -> RationalExpr:
    """Quotient-rule partial derivative of an unreduced quotient."""
    num, den = expr.num, expr.den
    return RationalExpr(
        partial_derivative(num, name) * den - num * partial_derivative(den, name),
        den * den,
    )


def log_derivative(p: LaurentPoly, name: str) -> LaurentPoly:
    """The logarithmic derivative v * dp/dv; exponent shape is preserved."""
    idx = p.ring.index(name)
    out = {}
    for exp, coeff in p.terms.items():
        k = exp[idx]
        if k:
            out[exp] = coeff * k
    return LaurentPoly(p.ring, out)


def substitute(p: LaurentPoly, values: Mapping[str, object]) -> RationalExpr:
    """Substitute a rational expression (or polynomial) for every variable.

    Every variable of the source ring must be mapped; all values must live
    in one common target ring.  The result is an unreduced quotient.
    """
    ring = p.ring
    missing = [v for v in ring.variables if v not in values]
    if missing:
        raise UnknownVariable("no value given for %r" % (missing,))
    extra = [v for v in values if v not in ring.variables]
    if extra:
        raise UnknownVariable("values given for unknown %r" % (extra,))

    target: LaurentRing | None = None
    for v in values.values():
        if isinstance(v, (LaurentPoly, RationalExpr)):
            target = v.ring
            break
    if target is None:
        raise VarSetMismatch("at least one value must carry a target ring")
    if target.field != ring.field:
        raise ParameterMismatch("source and target coefficient fields differ")

    exprs = []
    for name in ring.variables:
        v = values[name]
        if isinstance(v, RationalExpr):
            if v.ring != target:
                raise VarSetMismatch("values live in different rings")
            exprs.append(v)
        else:
            exprs.append(RationalExpr(target.coerce(v), target.one))

    total = RationalExpr(target.zero, target.one)
    for exp, coeff in p.items():
        term = RationalExpr(target.constant(coeff), target.one)
        for e, expr in zip(exp, exprs):
            if e:
                term = term * expr ** e
        total = total + term
    return total


def substitute_rational(expr: RationalExpr, values: Mapping[str, object]) -> RationalExpr:
    """Substitute into an unreduced quotient, one ring change for both
    numerator and denominator."""
    num = substitute(expr.num, values)
    den = substitute(expr.den, values)
    if den.is_zero():
        raise ZeroDenominator("denominator collapses under substitution")
    return num / den


def clear_denominators(p: LaurentPoly) -> tuple[LaurentPoly, tuple[int, ...]]:
    """Multiply by the least monomial making all exponents nonnegative.

    Returns the cleared polynomial and the exponent vector of that monomial.
    Numeric denominators inside coefficients are left alone.
    """
    n = p.ring.arity
    if not p.terms:
        return p, (0,) * n
    shift = tuple(
        max(0, -min(e[i] for e in p.terms)) for i in range(n)
    )
    if not any(shift):
        return p, shift
    out = {tuple(a + b for a, b in zip(e, shift)): c for e, c in p.terms.items()}
    return LaurentPoly(p.ring, out), shift


def eval_at(p: LaurentPoly, point: Mapping[str, object]):
    """Evaluate at a point with coordinates in the parameter field or its
    cubic extension.  Negative exponents of a zero coordinate raise
    ``PoleAtPoint``."""
    ring = p.ring
    missing = [v for v in ring.variables if v not in point]
    if missing:
        raise UnknownVariable("no coordinate for %r" % (missing,))

    ext: CubicExt | None = None
    for v in point.values():
        if isinstance(v, CubicElem):
            ext = v.ext
            break

    def lift(value):
        if ext is not None:
            return ext.coerce(value)
        return ring.field.coerce(value)

    coords = [lift(point[name]) for name in ring.variables]
    total = lift(0)
    for exp, coeff in p.items():
        term = lift(coeff)
        for value, e in zip(coords, exp):
            if e == 0:
                continue
            if value.is_zero() and e < 0:
                raise PoleAtPoint(
                    "negative power of a vanishing coordinate"
                )
            term = term * value ** e
        total = total + term
    return total


def eval_rational(expr: RationalExpr, point: Mapping[str, object]):
    den = eval_at(expr.den, point)
    if den.is_zero():
        raise PoleAtPoint("denominator vanishes at the point")
    return eval_at(expr.num, point) * den ** -1


def specialize_parameter(p: LaurentPoly, name: str, value) -> LaurentPoly:
    """Substitute a rational constant for one coefficient parameter."""
    field = p.ring.field
    target_field = ParamField(tuple(q for q in field.params if q != name))
    target = LaurentRing(p.ring.variables, target_field)
    out = {}
    for exp, coeff in p.terms.items():
        c = specialize_param(coeff, name, value)
        if not c.is_zero():
            out[exp] = c
    return LaurentPoly(target, out)


_POLY_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


def poly_arith(op: str, a, b):
    """Apply a named ring operation; ``op`` is one of ``+ - * /`` (division
    builds a rational expression)."""
    try:
        fn = _POLY_OPS[op]
    except KeyError:
        raise ValueError("unknown polynomial operation %r" % (op,)) from None
    return fn(a, b)
