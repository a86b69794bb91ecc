"""Exception hierarchy.

Every error raised by the library derives from :class:`GenusError`, so callers
(the CLI in particular) can map families of failures onto exit codes.
"""

from __future__ import annotations


class GenusError(Exception):
    """Base class for all library errors."""


class InputError(GenusError, ValueError):
    """Bad arguments; the CLI maps these to exit code 2."""


class ComputationError(GenusError):
    """Valid input that cannot be processed; exit code 1."""


# fq_arith
class NotPrime(InputError):
    pass


class ReducibleModulus(InputError):
    pass


class NoGeneratorFound(ComputationError):
    pass


class MixedFields(InputError):
    pass


class DivisionByZero(GenusError, ZeroDivisionError):
    pass


class KummerHypothesisViolated(InputError):
    pass


class DeskBoundExceeded(ComputationError):
    pass


# rt_poly
class DivisionByZeroPoly(DivisionByZero):
    pass


class NotMonic(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


# kummer_lattice
class UnsupportedPrime(InputError):
    pass


class IncompatibleLattices(InputError):
    pass


# local_infinity
class WildPrime(InputError):
    pass


class ZeroInput(InputError):
    pass


class NotApplicable(ComputationError):
    pass


# genus_core
class ScopeViolation(ComputationError):
    pass


class EmptyFactorization(InputError):
    pass


class InternalInconsistency(ComputationError):
    """An identity that must hold did not; never swallowed."""


# verify_oracle
class SharedFactor(InputError):
    pass


class EnumerationBoundExceeded(ComputationError):
    pass


class SchemaError(InputError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason
