"""
Error hierarchy shared by every module.

All errors derive from ValueError so callers that only know about bad input
can keep catching that.
"""

from typing import List, Optional


class IndefiniteDatabaseError(ValueError):
    """Base class for all domain errors"""


class UnknownPredicateError(IndefiniteDatabaseError):
    def __init__(self, pred: str):
        self.pred = pred
        super().__init__(f"Predicate '{pred}' is not declared")


class ArityMismatchError(IndefiniteDatabaseError):
    def __init__(self, pred: str, expected: int, actual: int):
        self.pred = pred
        self.expected = expected
        self.actual = actual
        super().__init__(f"Predicate '{pred}' has arity {expected}, got {actual} arguments")


class InstanceSyntaxError(IndefiniteDatabaseError):
    """Raised when an instance text has one or more diagnostics"""

    def __init__(self, diagnostics: List["Diagnostic"]):  # noqa: F821
        self.diagnostics = diagnostics
        first = diagnostics[0] if diagnostics else None
        message = first.error_message if first else "invalid instance"
        super().__init__(f"{len(diagnostics)} diagnostic(s): {message}")


class ConstraintEvaluationError(IndefiniteDatabaseError):
    pass


class UniverseCapExceededError(IndefiniteDatabaseError):
    def __init__(self, universe_size: int, cap: int):
        self.universe_size = universe_size
        self.cap = cap
        super().__init__(
            f"World universe has {universe_size} candidate atoms, cap is {cap} "
            f"(raise it with --universe-cap)"
        )


class InconsistentDatabaseError(IndefiniteDatabaseError):
    def __init__(self, message: str = "The database has no possible world"):
        super().__init__(message)


class ContradictoryUpdateError(IndefiniteDatabaseError):
    pass


class BudgetExhaustedError(IndefiniteDatabaseError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Search budget exhausted: {reason}")


class StableModelCapExceededError(IndefiniteDatabaseError):
    def __init__(self, negated_atoms: int, cap: int):
        self.negated_atoms = negated_atoms
        self.cap = cap
        super().__init__(
            f"Ground program has {negated_atoms} negated derived atoms, cap is {cap}"
        )


class RepairPreconditionError(IndefiniteDatabaseError):
    pass


class FormulaShapeError(IndefiniteDatabaseError):
    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message)
