"""Exact scalar arithmetic.

Three layers, all exact:

* ``Fraction`` from the standard library for plain rationals.
* ``ParamField`` / ``PFElem``: the fraction field of an integer polynomial
  ring in named parameters.  Elements are kept as unreduced fractions of
  integer polynomials; no multivariate gcd is ever computed.  Equality is
  decided by cross multiplication, and a cheap normalization (divide out the
  integer content, make the denominator's leading coefficient positive)
  keeps growth in check and makes printing deterministic.
* ``CubicExt`` / ``CubicElem``: the degree-three extension of such a field
  by a root ``xi`` of ``xi^3 = 4*q``.  Inversion uses the closed-form
  adjugate of the multiplication matrix, so no linear solver is needed.

Integer polynomials are plain dicts mapping exponent tuples to nonzero int
coefficients; the heavy dict operations live in ``lgq._kernel`` which is
either the pure-Python backend or its compiled twin.

Floats are rejected everywhere: any inexact number entering a conversion
raises ``InexactCoefficient``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

from ._kernel import (
    zp_add,
    zp_content,
    zp_div_int,
    zp_mul,
    zp_mul_int,
    zp_neg,
    zp_sub,
)
from .errors import DivisionByZero, InexactCoefficient, ParameterMismatch

BigRat = Fraction

Coercible = Union["PFElem", Fraction, int]


def _check_exact(value: object) -> None:
    if isinstance(value, (float, complex)):
        raise InexactCoefficient(
            "inexact number %r is not allowed in exact arithmetic" % (value,)
        )


class ParamField:
    """Fraction field of ZZ[params] for a fixed tuple of parameter names."""

    __slots__ = ("_params", "_zero", "_one", "_zp_one")

    def __init__(self, params: Sequence[str]):
        names = tuple(params)
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter names: %r" % (names,))
        for name in names:
            if not name or not name.isidentifier():
                raise ValueError("bad parameter name: %r" % (name,))
        self._params = names
        self._zp_one = {(0,) * len(names): 1}
        self._zero = PFElem(self, {}, dict(self._zp_one), _normalized=True)
        self._one = PFElem(
            self, dict(self._zp_one), dict(self._zp_one), _normalized=True
        )

    @property
    def params(self) -> tuple[str, ...]:
        return self._params

    @property
    def arity(self) -> int:
        return len(self._params)

    @property
    def zero(self) -> "PFElem":
        return self._zero

    @property
    def one(self) -> "PFElem":
        return self._one

    def zp_one(self) -> dict:
        return dict(self._zp_one)

    def from_int(self, value: int) -> "PFElem":
        _check_exact(value)
        if not isinstance(value, int):
            raise InexactCoefficient("expected int, got %r" % (value,))
        if value == 0:
            return self._zero
        num = {(0,) * self.arity: value}
        return PFElem(self, num, dict(self._zp_one), _normalized=True)

    def from_fraction(self, value: Fraction) -> "PFElem":
        _check_exact(value)
        value = Fraction(value)
        if value == 0:
            return self._zero
        zeros = (0,) * self.arity
        return PFElem(
            self,
            {zeros: value.numerator},
            {zeros: value.denominator},
            _normalized=True,
        )

    def var(self, name: str) -> "PFElem":
        idx = self.index(name)
        exp = tuple(1 if i == idx else 0 for i in range(self.arity))
        return PFElem(self, {exp: 1}, dict(self._zp_one), _normalized=True)

    def index(self, name: str) -> int:
        try:
            return self._params.index(name)
        except ValueError:
            raise ParameterMismatch(
                "parameter %r not in field over %r" % (name, self._params)
            ) from None

    def element(self, num: Mapping[tuple, int], den: Mapping[tuple, int]) -> "PFElem":
        return PFElem(self, dict(num), dict(den))

    def from_zpoly(self, num: Mapping[tuple, int]) -> "PFElem":
        return PFElem(self, dict(num), dict(self._zp_one))

    def coerce(self, value: Coercible) -> "PFElem":
        if isinstance(value, PFElem):
            if value.field is not self and value.field != self:
                raise ParameterMismatch(
                    "cannot mix fields over %r and %r"
                    % (value.field.params, self._params)
                )
            return value
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, int):
            return self.from_int(value)
        _check_exact(value)
        raise InexactCoefficient("cannot coerce %r into %r" % (value, self))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParamField) and other._params == self._params

    def __hash__(self) -> int:
        return hash(("ParamField", self._params))

    def __repr__(self) -> str:
        return "ParamField(%s)" % ", ".join(self._params)


def _zp_is_neg_lead(den: Mapping[tuple, int]) -> bool:
    lead = max(den)
    return den[lead] < 0


class PFElem:
    """One element of a ``ParamField``, stored as an unreduced fraction."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: ParamField, num: dict, den: dict, _normalized=False):
        if not den:
            raise DivisionByZero("denominator polynomial is zero")
        self.field = field
        if _normalized:
            self.num = num
            self.den = den
            return
        if not num:
            self.num = {}
            self.den = field.zp_one()
            return
        g = zp_content(num)
        if g != 1:
            g = gcd(g, zp_content(den))
        if g > 1:
            num = zp_div_int(num, g)
            den = zp_div_int(den, g)
        mins = None
        for exp in num:
            mins = exp if mins is None else tuple(map(min, mins, exp))
        for exp in den:
            mins = exp if mins is None else tuple(map(min, mins, exp))
        if any(mins):
            # strip the common parameter monomial, an exact shift
            num = {tuple(a - b for a, b in zip(e, mins)): c for e, c in num.items()}
            den = {tuple(a - b for a, b in zip(e, mins)): c for e, c in den.items()}
        if _zp_is_neg_lead(den):
            num = zp_neg(num)
            den = zp_neg(den)
        self.num = num
        self.den = den

    # arithmetic

    def __add__(self, other: Coercible) -> "PFElem":
        other = self.field.coerce(other)
        num = zp_add(zp_mul(self.num, other.den), zp_mul(other.num, self.den))
        return PFElem(self.field, num, zp_mul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "PFElem":
        other = self.field.coerce(other)
        num = zp_sub(zp_mul(self.num, other.den), zp_mul(other.num, self.den))
        return PFElem(self.field, num, zp_mul(self.den, other.den))

    def __rsub__(self, other: Coercible) -> "PFElem":
        return self.field.coerce(other) - self

    def __mul__(self, other: Coercible) -> "PFElem":
        other = self.field.coerce(other)
        return PFElem(
            self.field, zp_mul(self.num, other.num), zp_mul(self.den, other.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "PFElem":
        other = self.field.coerce(other)
        if not other.num:
            raise DivisionByZero("division by zero field element")
        return PFElem(
            self.field, zp_mul(self.num, other.den), zp_mul(self.den, other.num)
        )

    def __rtruediv__(self, other: Coercible) -> "PFElem":
        return self.field.coerce(other) / self

    def __neg__(self) -> "PFElem":
        return PFElem(self.field, zp_neg(self.num), dict(self.den), _normalized=True)

    def __pow__(self, exponent: int) -> "PFElem":
        if not isinstance(exponent, int):
            raise InexactCoefficient("exponent must be int, got %r" % (exponent,))
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "PFElem":
        if not self.num:
            raise DivisionByZero("zero has no inverse")
        return PFElem(self.field, dict(self.den), dict(self.num))

    # predicates

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == self.den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.coerce(other)
        elif not isinstance(other, PFElem):
            return NotImplemented
        elif other.field != self.field:
            raise ParameterMismatch(
                "cannot compare elements over %r and %r"
                % (self.field.params, other.field.params)
            )
        return zp_mul(self.num, other.den) == zp_mul(other.num, self.den)

    __hash__ = None  # equality is by cross multiplication

    def is_constant(self) -> bool:
        zeros = (0,) * self.field.arity
        return all(e == zeros for e in self.num) and all(
            e == zeros for e in self.den
        )

    def as_fraction(self) -> Fraction:
        """Value as a plain rational; only valid for constant elements."""
        zeros = (0,) * self.field.arity
        if not self.is_constant():
            raise ValueError("element %r is not constant" % (self,))
        return Fraction(self.num.get(zeros, 0), self.den[zeros])

    def __repr__(self) -> str:
        return "PFElem(%s / %s over %s)" % (
            _zp_repr(self.num, self.field.params),
            _zp_repr(self.den, self.field.params),
            ",".join(self.field.params),
        )


def _zp_repr(zp: Mapping[tuple, int], params: tuple[str, ...]) -> str:
    if not zp:
        return "0"
    parts = []
    for exp in sorted(zp):
        factors = [str(zp[exp])]
        for name, e in zip(params, exp):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append("%s^%d" % (name, e))
        parts.append("*".join(factors))
    return "+".join(parts).replace("+-", "-")


def specialize_param(elem: PFElem, name: str, value: Union[int, Fraction]) -> PFElem:
    """Substitute a rational value for one parameter, landing in the field
    over the remaining parameters."""
    _check_exact(value)
    value = Fraction(value)
    field = elem.field
    idx = field.index(name)
    target = ParamField(tuple(p for p in field.params if p != name))

    def subst(zp: Mapping[tuple, int]) -> tuple[dict, int]:
        acc: dict[tuple, Fraction] = {}
        for exp, coeff in zp.items():
            reduced = exp[:idx] + exp[idx + 1 :]
            acc[reduced] = acc.get(reduced, Fraction(0)) + coeff * value ** exp[idx]
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return {}, 1
        scale = lcm(*(c.denominator for c in acc.values()))
        return {e: int(c * scale) for e, c in acc.items()}, scale

    num, a = subst(elem.num)
    den, b = subst(elem.den)
    if not den:
        raise DivisionByZero(
            "denominator vanishes at %s = %s" % (name, value)
        )
    return PFElem(target, zp_mul_int(num, b), zp_mul_int(den, a))


class CubicExt:
    """Degree-three extension of a parameter field by xi with xi^3 = 4*q."""

    __slots__ = ("base", "_fourq", "_zero", "_one", "_xi")

    def __init__(self, base: ParamField, q_name: str = "q"):
        self.base = base
        self._fourq = base.var(q_name) * 4
        z, o = base.zero, base.one
        self._zero = CubicElem(self, (z, z, z))
        self._one = CubicElem(self, (o, z, z))
        self._xi = CubicElem(self, (z, o, z))

    @property
    def zero(self) -> "CubicElem":
        return self._zero

    @property
    def one(self) -> "CubicElem":
        return self._one

    @property
    def xi(self) -> "CubicElem":
        return self._xi

    def from_base(self, value: Coercible) -> "CubicElem":
        c = self.base.coerce(value)
        return CubicElem(self, (c, self.base.zero, self.base.zero))

    def element(self, coeffs: Iterable[Coercible]) -> "CubicElem":
        c0, c1, c2 = (self.base.coerce(c) for c in coeffs)
        return CubicElem(self, (c0, c1, c2))

    def coerce(self, value) -> "CubicElem":
        if isinstance(value, CubicElem):
            if value.ext.base != self.base:
                raise ParameterMismatch("cubic elements over different bases")
            return value
        return self.from_base(value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CubicExt) and other.base == self.base

    def __hash__(self) -> int:
        return hash(("CubicExt", self.base))

    def __repr__(self) -> str:
        return "CubicExt(%r)" % (self.base,)


class CubicElem:
    """a0 + a1*xi + a2*xi^2 with coefficients in the base field."""

    __slots__ = ("ext", "coeffs")

    def __init__(self, ext: CubicExt, coeffs: tuple[PFElem, PFElem, PFElem]):
        self.ext = ext
        self.coeffs = coeffs

    def __add__(self, other) -> "CubicElem":
        other = self.ext.coerce(other)
        a, b = self.coeffs, other.coeffs
        return CubicElem(self.ext, (a[0] + b[0], a[1] + b[1], a[2] + b[2]))

    __radd__ = __add__

    def __sub__(self, other) -> "CubicElem":
        other = self.ext.coerce(other)
        a, b = self.coeffs, other.coeffs
        return CubicElem(self.ext, (a[0] - b[0], a[1] - b[1], a[2] - b[2]))

    def __rsub__(self, other) -> "CubicElem":
        return self.ext.coerce(other) - self

    def __neg__(self) -> "CubicElem":
        a = self.coeffs
        return CubicElem(self.ext, (-a[0], -a[1], -a[2]))

    def __mul__(self, other) -> "CubicElem":
        other = self.ext.coerce(other)
        a, b = self.coeffs, other.coeffs
        fourq = self.ext._fourq
        c0 = a[0] * b[0] + fourq * (a[1] * b[2] + a[2] * b[1])
        c1 = a[0] * b[1] + a[1] * b[0] + fourq * (a[2] * b[2])
        c2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0]
        return CubicElem(self.ext, (c0, c1, c2))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "CubicElem":
        return self * self.ext.coerce(other).inverse()

    def __rtruediv__(self, other) -> "CubicElem":
        return self.ext.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CubicElem":
        if not isinstance(exponent, int):
            raise InexactCoefficient("exponent must be int, got %r" % (exponent,))
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.ext.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "CubicElem":
        # Adjugate of multiplication by (a0, a1, a2); the determinant is the
        # field norm and is nonzero for every nonzero element because the
        # minimal cubic is irreducible over the base.
        a0, a1, a2 = self.coeffs
        fourq = self.ext._fourq
        det = a0**3 + fourq * a1**3 + fourq**2 * a2**3 - 3 * fourq * a0 * a1 * a2
        if det.is_zero():
            raise DivisionByZero("zero cubic element has no inverse")
        b0 = (a0 * a0 - fourq * a1 * a2) / det
        b1 = (fourq * a2 * a2 - a0 * a1) / det
        b2 = (a1 * a1 - a0 * a2) / det
        return CubicElem(self.ext, (b0, b1, b2))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, PFElem)):
            other = self.ext.coerce(other)
        elif not isinstance(other, CubicElem):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return "CubicElem(%r, %r, %r)" % self.coeffs


# small functional facade used by callers that only need operations by name

_FIELD_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


def field_arith(op: str, a, b):
    """Apply a named field operation; ``op`` is one of ``+ - * /``."""
    try:
        fn = _FIELD_OPS[op]
    except KeyError:
        raise ValueError("unknown field operation %r" % (op,)) from None
    return fn(a, b)


def ext_mul(a: CubicElem, b: CubicElem) -> CubicElem:
    """Product in the cubic extension."""
    return a * b


def is_zero(value) -> bool:
    """Zero test that works for Fraction, int, PFElem and CubicElem."""
    if isinstance(value, (int, Fraction)):
        return value == 0
    return value.is_zero()
