"""Value types shared by evaluators, the sweep engine and the CLI."""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from typing import Optional


class IdentityId(enum.Enum):
    """Identity tags. The value doubles as the CLI name and the serialized tag."""

    VANDERMONDE = "vandermonde"
    LI_SHANLAN = "li-shanlan"
    INJECTION_DIFF = "injection-diff"
    THEOREM_PERM = "theorem-perm"
    CONJECTURE_GEN = "conjecture"
    PROOF_REINDEX = "proof-reindex"
    DYADIC = "dyadic"

    @classmethod
    def parse(cls, tag: str) -> IdentityId:
        for member in cls:
            if tag in (member.value, member.name):
                return member
        raise LookupError(f"unknown identity {tag!r}; known: {', '.join(m.value for m in cls)}")


# canonical serialization and sort order of parameters
PARAM_ORDER = ("k", "m", "n", "i", "j")


@dataclass(frozen=True)
class ParamPoint:
    k: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    i: Optional[int] = None
    j: Optional[int] = None

    def named(self) -> dict[str, int]:
        """Present parameters in canonical order."""
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    def __str__(self) -> str:
        return "(" + ", ".join(f"{name}={value}" for name, value in self.named().items()) + ")"


@dataclass(frozen=True)
class VerificationRecord:
    """Both sides of one identity instance.

    ``residual`` and ``holds`` are fixed at construction; use :meth:`build`
    to derive them from the two sides. ``oracle_agrees`` is only set by a
    re-check against a brute-force oracle (None when no oracle applies).
    """

    identity: IdentityId
    params: ParamPoint
    lhs: int
    rhs: int
    residual: int
    holds: bool
    in_domain: bool
    oracle_agrees: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.residual != self.lhs - self.rhs:
            raise ValueError(f"residual {self.residual} != lhs - rhs for {self.identity.value} {self.params}")
        if self.holds != (self.residual == 0):
            raise ValueError(f"holds={self.holds} inconsistent with residual {self.residual}")

    @classmethod
    def build(cls, identity: IdentityId, params: ParamPoint, lhs: int, rhs: int, in_domain: bool) -> VerificationRecord:
        residual = lhs - rhs
        return cls(identity, params, lhs, rhs, residual, residual == 0, in_domain)
