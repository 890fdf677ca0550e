# entrobound_core/errors.py
"""Exception hierarchy. Each class carries the CLI exit code it maps to."""
from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SPEC_ERROR = 2
EXIT_DIVERGENCE = 3
EXIT_EQUAL_EXPONENTS = 4
EXIT_INVARIANT_FAILED = 5


class EntroboundError(Exception):
    exit_code = EXIT_FAILURE


class SpecParseError(EntroboundError, ValueError):
    exit_code = EXIT_SPEC_ERROR


class IndexOutOfRangeError(EntroboundError, IndexError):
    exit_code = EXIT_SPEC_ERROR


class UnusableTailError(EntroboundError):
    """An Explicit spec without a tail model was asked for a tail-dependent quantity."""

    exit_code = EXIT_SPEC_ERROR


class SequenceDivergenceError(EntroboundError):
    exit_code = EXIT_DIVERGENCE


class PrecisionNotReachedError(EntroboundError):
    exit_code = EXIT_DIVERGENCE


class EqualExponentsError(EntroboundError, ValueError):
    exit_code = EXIT_EQUAL_EXPONENTS


class ExponentBranchError(EntroboundError, AttributeError):
    exit_code = EXIT_EQUAL_EXPONENTS


class DimensionCapError(EntroboundError, ValueError):
    exit_code = EXIT_SPEC_ERROR


class ResolutionTooCoarseError(EntroboundError, ValueError):
    exit_code = EXIT_SPEC_ERROR


class GridTooLargeError(EntroboundError, MemoryError):
    exit_code = EXIT_SPEC_ERROR


class InvariantViolationError(EntroboundError):
    exit_code = EXIT_INVARIANT_FAILED

    def __init__(self, message: str, counterexample: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.counterexample = counterexample or {}
