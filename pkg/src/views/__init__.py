"""
Views Module

Datalog¬ views over possible worlds: grounding, answer sets, consistency of
deductive databases and their three-valued valuation.

Key Components:
- grounding.py: full, relevant and goal-directed grounding of view rules
- answer_sets.py: least models, perfect models and brute-force stable models
- reasoner.py: SAT over the view's completion, or per-world enumeration
- service.py: ddb_consistent and ddb_truth
- schemas.py: ground rules and programs
"""

from .answer_sets import answer_sets, is_answer_set, least_model, stratified_model
from .grounding import ground, ground_for_goals, ground_relevant
from .reasoner import CompletionReasoner, DeductiveReasoner, EnumerationReasoner
from .schemas import AnswerSetSummary, GroundProgram, GroundRule, ReasoningStrategy
from .service import answer_set_summaries, ddb_consistent, ddb_truth, ddb_truths

__all__ = [
    "answer_sets",
    "is_answer_set",
    "least_model",
    "stratified_model",
    "ground",
    "ground_for_goals",
    "ground_relevant",
    "CompletionReasoner",
    "DeductiveReasoner",
    "EnumerationReasoner",
    "AnswerSetSummary",
    "GroundProgram",
    "GroundRule",
    "ReasoningStrategy",
    "answer_set_summaries",
    "ddb_consistent",
    "ddb_truth",
    "ddb_truths",
]
