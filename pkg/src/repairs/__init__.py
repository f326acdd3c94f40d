"""
Repairs Module

Search and classification of updates that fulfil a request.
It includes:

- Iterative-deepening enumeration of weak repairs within a budget
- Relevance, minimality and constrainedness filters
- A SAT-based existence check that guesses the updated database directly

Key Components:
- search.py: RepairSearch, the budgeted candidate stream
- existence.py: exists_weak_repair, exists_relevant_weak_repair and their database-guess encodings
- service.py: find_repairs, is_constrained, classify_update
- schemas.py: repair classes, budgets and results
"""

from .existence import exists_relevant_weak_repair, exists_weak_repair, witness_update
from .schemas import (
    CLASS_ALIASES, RepairClass, RepairResult, SearchBudget, SearchStatus, UpdateClassification,
)
from .search import RepairSearch, search_constants
from .service import (
    classify_update, find_repairs, find_weak_repairs, is_constrained, is_relevant, minimal_updates,
)

__all__ = [
    "exists_relevant_weak_repair",
    "exists_weak_repair",
    "witness_update",
    "CLASS_ALIASES",
    "RepairClass",
    "RepairResult",
    "SearchBudget",
    "SearchStatus",
    "UpdateClassification",
    "RepairSearch",
    "search_constants",
    "classify_update",
    "find_repairs",
    "find_weak_repairs",
    "is_constrained",
    "is_relevant",
    "minimal_updates",
]
