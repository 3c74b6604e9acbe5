"""Exact verification and counterexample search for falling-factorial and 2-adic identities."""

from identsweep.exact import DomainError, binomial, factorial, falling_factorial
from identsweep.records import IdentityId, ParamPoint, VerificationRecord

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "IdentityId",
    "ParamPoint",
    "VerificationRecord",
    "binomial",
    "factorial",
    "falling_factorial",
]
