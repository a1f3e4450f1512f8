# src/errors.py
from typing import Any


class ProzetaError(Exception):
    """Base error; `code` is the stable name printed by the CLI."""

    code = "ERROR"

    def __init__(self, detail: str = "", **context: Any):
        super().__init__(detail or self.code)
        self.detail = detail
        self.context = context

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}" if self.detail else self.code


class FormatError(ProzetaError):
    code = "FORMAT_ERROR"


# dirichlet_ring
class NotDivisible(ProzetaError):
    code = "NOT_DIVISIBLE"


class DivisionByZero(ProzetaError):
    code = "DIVISION_BY_ZERO"


class FactorNotMonic(ProzetaError):
    code = "FACTOR_NOT_MONIC"


# coxeter / lie_series
class InvalidRank(ProzetaError):
    code = "INVALID_RANK"


class NotAnAutomorphism(ProzetaError):
    code = "NOT_AN_AUTOMORPHISM"


class UnsupportedForm(ProzetaError):
    code = "UNSUPPORTED_FORM"


class NotCyclotomicProduct(ProzetaError):
    code = "NOT_CYCLOTOMIC_PRODUCT"


class NonIntegralIndex(ProzetaError):
    code = "NON_INTEGRAL_INDEX"


class HypothesisViolation(ProzetaError):
    code = "HYPOTHESIS_VIOLATION"


# arith
class NotPrime(ProzetaError):
    code = "NOT_PRIME"


class Undefined(ProzetaError):
    code = "UNDEFINED"


class PowerOfP(ProzetaError):
    code = "POWER_OF_P"


class OutOfRange(ProzetaError):
    code = "OUT_OF_RANGE"


# perm_groups
class CapExceeded(ProzetaError):
    code = "CAP_EXCEEDED"


class NotNormal(ProzetaError):
    code = "NOT_NORMAL"


class PNotDividing(ProzetaError):
    code = "P_NOT_DIVIDING"


# profinite_engine / sporadic_data
class PartialFactor(ProzetaError):
    code = "PARTIAL_FACTOR"


class PreconditionViolated(ProzetaError):
    code = "PRECONDITION_VIOLATED"


class NoWitness(ProzetaError):
    code = "NO_WITNESS"


class UnknownSporadic(ProzetaError):
    code = "UNKNOWN_SPORADIC"
