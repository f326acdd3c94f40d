"""
Worlds Module

Possible worlds of an indefinite database under integrity constraints.

Key Components:
- pool.py: the finite constant pool (instance constants plus fresh ones)
- constraints.py: evaluation and grounding of ∃∀ constraints
- reasoner.py: WorldReasoner, a SAT encoding of the possible worlds
- service.py: enumerate_worlds, is_consistent, dbic_truth
- schemas.py: worlds, pools and domain budgets
"""

from .constraints import eval_constraint, ground_constraint, violated_bindings
from .pool import candidate_universe, completions, constant_pool
from .reasoner import WorldReasoner
from .schemas import ConstantPool, DomainBudget, FreshNumeralPolicy, World
from .service import dbic_truth, enumerate_worlds, enumerate_worlds_brute, is_consistent, is_possible_world

__all__ = [
    "eval_constraint",
    "ground_constraint",
    "violated_bindings",
    "candidate_universe",
    "completions",
    "constant_pool",
    "WorldReasoner",
    "ConstantPool",
    "DomainBudget",
    "FreshNumeralPolicy",
    "World",
    "dbic_truth",
    "enumerate_worlds",
    "enumerate_worlds_brute",
    "is_consistent",
    "is_possible_world",
]
