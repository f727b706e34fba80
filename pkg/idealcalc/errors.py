"""
Exception hierarchy. Every error carries the CLI exit code it maps to.
"""

from typing import Any, Dict, Optional


class IdealCalcError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": str(self)}


# ====== usage / parse (exit 2) ======

class ParseError(IdealCalcError):
    def __init__(self, message: str, text: str = "", position: Optional[int] = None):
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class RingMismatchError(IdealCalcError):
    pass


class DimensionMismatchError(IdealCalcError):
    pass


class InhomogeneousInputError(IdealCalcError):
    pass


class OrderError(IdealCalcError):
    pass


class DegenerateDrawError(IdealCalcError):
    pass


class UnknownTheoremError(IdealCalcError):
    pass


# ====== resource guard (exit 3) ======

class DegreeGuardExceeded(IdealCalcError):
    exit_code = 3

    def __init__(self, degree: int, guard: int):
        super().__init__(f"total degree {degree} exceeds the degree guard {guard}")
        self.degree = degree
        self.guard = guard


# ====== preconditions (exit 4) ======

class PreconditionError(IdealCalcError):
    exit_code = 4


class NotDisjointError(PreconditionError):
    def __init__(self, dimension: int):
        super().__init__(
            f"subschemes are not disjoint: dim S/(I+J) = {dimension} "
            f"(projective dimension {dimension - 1} of V(I+J))"
        )
        self.dimension = dimension


class UncertifiedWindowError(PreconditionError):
    pass


class GenericityUncertainError(PreconditionError):
    def __init__(self, seeds, values):
        super().__init__(f"genericity uncertain: seeds {list(seeds)} gave {values}")
        self.seeds = list(seeds)
        self.values = values


# ====== verdicts (exit 5) ======

class TheoremViolation(IdealCalcError):
    exit_code = 5

    def __init__(self, report: Dict[str, Any]):
        super().__init__(f"{report.get('theoremId')} violated")
        self.report = report
