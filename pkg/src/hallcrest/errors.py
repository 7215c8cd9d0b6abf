"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: InputError -> 2, BudgetError and
InstabilityError -> 3, InternalCheckError and verification failures -> 1.
"""

from __future__ import annotations


class HallcrestError(Exception):
    """Base class for all package-specific errors."""


class InputError(HallcrestError):
    """Malformed or out-of-envelope user input."""


class QuiverParseError(InputError):
    """Quiver file rejected. Carries a diagnostic code and line number."""

    def __init__(self, message: str, code: str, line: int | None = None):
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{loc}")
        self.code = code
        self.line = line


class CatalogBoundError(InputError):
    """A requested dimension vector exceeds the catalogued bound."""


class CatalogIncompleteError(InputError):
    """A summand matched no catalogued class; the catalog bound is too small."""


class FingerprintCollisionError(InputError):
    """Two non-isomorphic classes share a fingerprint (input outside the
    validated envelope)."""


class CrossPrimeMismatchError(InputError):
    """Catalogs at two primes could not be matched class-by-class."""


class BudgetError(HallcrestError):
    """An enumeration cost estimate exceeded its budget; refusing to guess."""


class InstabilityError(HallcrestError):
    """Interpolation could not be certified on the allowed prime ladder."""


class InternalCheckError(HallcrestError):
    """An invariant that should be unreachable failed; indicates a bug or an
    input far outside the validated envelope."""
