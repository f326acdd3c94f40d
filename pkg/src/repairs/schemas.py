from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from src.core.schemas import Constant
from src.updates.schemas import ActionTarget, Update
from src.worlds.schemas import DomainBudget


class RepairClass(str, Enum):
    """Repair classes, from the widest to the narrowest"""
    WEAK = "weak"
    RELEVANT_WEAK = "relevant_weak"
    REPAIR = "repair"
    RELEVANT_REPAIR = "relevant_repair"
    CONSTRAINED_WEAK = "constrained_weak"
    CONSTRAINED_REPAIR = "constrained_repair"

    @property
    def needs_relevance(self) -> bool:
        return self not in (RepairClass.WEAK, RepairClass.REPAIR)

    @property
    def needs_minimality(self) -> bool:
        return self in (RepairClass.REPAIR, RepairClass.RELEVANT_REPAIR, RepairClass.CONSTRAINED_REPAIR)

    @property
    def needs_constrained(self) -> bool:
        return self in (RepairClass.CONSTRAINED_WEAK, RepairClass.CONSTRAINED_REPAIR)


# Short names accepted on the command line
CLASS_ALIASES = {
    "relevant": RepairClass.RELEVANT_REPAIR,
    "constrained": RepairClass.CONSTRAINED_REPAIR,
    "minimal": RepairClass.REPAIR,
}


class SearchStatus(str, Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


class SearchBudget(BaseModel):
    """Bounds of the repair search"""
    max_update_size: int = Field(default=2, gt=0)
    max_results: int = Field(default=1000, gt=0)
    fresh_constants: int = Field(default=1, ge=0)
    deadline_seconds: Optional[float] = Field(default=60.0, gt=0)
    domain: DomainBudget = DomainBudget()
    targets: Tuple[ActionTarget, ...] = (ActionTarget.D,)


class RepairResult(BaseModel):
    """Updates of one class found within a budget"""
    repair_class: RepairClass
    updates: List[Update] = []
    status: SearchStatus = SearchStatus.COMPLETE
    reason: Optional[str] = None
    qualifier: Optional[str] = None
    candidates: int = 0
    checks: int = 0


class UpdateClassification(BaseModel):
    """Which repair properties a given update has"""
    update: Update
    canonical: bool
    weak: bool
    relevant: bool
    constrained: bool
    new_constants: List[Constant] = []
