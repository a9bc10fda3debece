"""Exception hierarchy for the whole package.

Every error raised by library code derives from LgqError so that the CLI can
map failures to exit codes in one place.
"""


class LgqError(Exception):
    """Base class for all package errors."""


# scalar / laurent layer

class DivisionByZero(LgqError, ZeroDivisionError):
    """Division by a zero field element."""


class ParameterMismatch(LgqError, ValueError):
    """Operands declared over different parameter sets."""


class InexactCoefficient(LgqError, TypeError):
    """A float (or other inexact number) reached an exact computation."""


class VarSetMismatch(LgqError, ValueError):
    """Operands over different variable sets."""


class UnknownVariable(LgqError, ValueError):
    """A variable name not present in the ring."""


class ZeroDenominator(LgqError, ZeroDivisionError):
    """A rational expression was built with denominator zero."""


class PoleAtPoint(LgqError, ZeroDivisionError):
    """Evaluation hit a zero value raised to a negative exponent."""


# groebner layer

class ResourceBudgetExceeded(LgqError):
    """The pair/reduction budget of a basis computation ran out."""


class NotStabilized(LgqError):
    """Local dimension did not stabilize within the allowed power of the
    maximal ideal."""


class OriginNotInVariety(LgqError, ValueError):
    """A generator has a nonzero constant term, so the origin is not a
    common zero."""


# reduction engine

class BudgetExceeded(LgqError):
    """Class reduction exceeded its recursion-depth budget."""


class DivisionFailure(LgqError):
    """Internal invariant breach while tracking division cofactors."""


class NotBirkhoffForm(LgqError):
    """A decomposition exceeded degree one in the connection parameter."""


class NotNilpotent(LgqError):
    """The graded operator failed its nilpotence certificate."""


class UnexpectedSolutionSpace(LgqError):
    """The pairing constraint system has the wrong solution-space
    dimension."""


class FiltrationMismatch(LgqError):
    """Computed and expected filtrations differ."""


# verification-level

class VerificationFailed(LgqError):
    """A point or matrix failed its defining relations."""


class IdentityFailed(LgqError):
    """An exact polynomial identity did not hold."""


class RankDeficient(LgqError):
    """A family expected to be independent has deficient rank."""


class IdealsDiffer(LgqError):
    """Two ideals expected to be equal are not."""


class TFound(LgqError):
    """A generator expected to be parameter-free mentions the deformation
    parameter."""


class MuNotConstant(LgqError):
    """Local Milnor numbers differ across the sampled family."""


class JacobianVanishesOnLocus(LgqError):
    """A coordinate-change Jacobian vanishes somewhere on the certified
    locus."""


class Mismatch(LgqError):
    """Entrywise comparison of two matrices failed."""


# cli layer

class UsageError(LgqError):
    """Bad command line (exit code 64)."""


class ParseError(LgqError):
    """Malformed polynomial text (exit code 65)."""


class IoError(LgqError, OSError):
    """Report destination could not be written."""
