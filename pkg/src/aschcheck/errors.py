"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`AschError`,
so callers (and the CLI) can separate bad input from genuine bugs.
"""

from __future__ import annotations


class AschError(Exception):
    """Base class for all library errors."""


# finite fields
class CompositeCharacteristic(AschError):
    pass


class ReducibleModulus(AschError):
    pass


class FieldMismatch(AschError):
    pass


class NonDivisorDegree(AschError):
    pass


class NormNotOne(AschError):
    pass


class NoEmbedding(AschError):
    pass


# linear algebra
class SingularMatrix(AschError):
    pass


class ShapeMismatch(AschError):
    pass


class EmptyGeneratorList(AschError):
    pass


class NormConditionViolated(AschError):
    pass


class RetriesExhausted(AschError):
    pass


# groups
class OrderCapExceeded(AschError):
    pass


class SingularGenerator(AschError):
    pass


class NotAHomomorphism(AschError):
    pass


class NotPrimeOrder(AschError):
    pass


class RootsOfUnityMissing(AschError):
    pass


class NotNormal(AschError):
    pass


# criteria
class NotAbsolutelyIrreducible(AschError):
    pass


class CharactersDiffer(AschError):
    pass


class CharacteristicTwo(AschError):
    pass


class NoOrderTwoAutomorphism(AschError):
    pass


class NonPrimeDegree(AschError):
    pass


class NotTransitive(AschError):
    pass


class NotInStabilizer(AschError):
    pass


class InvariantViolation(AschError):
    """A constructed witness failed its own re-verification."""


# input
class ParseError(AschError):
    pass


class ValidationError(AschError):
    pass
