"""
Core Module

Domain values of indefinite databases and the informativeness lattice.
It includes:

- Constants (the single null value, numerals, symbols) and facts
- The informativeness order, compatibility and the four closure operators
- The three-valued truth of a fact in a database

Key Components:
- schemas.py: Pydantic models for constants, facts, schemas and databases
- service.py: Order, closure membership and truth functions
- index.py: Predicate/position index and join used by grounding
"""

from .schemas import (
    Closure, Constant, ConstantKind, Fact, IndefiniteDatabase, Interpretation,
    NULL, Schema, TruthValue,
)
from .service import (
    compatible, constants_of, db_truth, fact_universe, in_closure, interpretation,
    leq_info, least_upper_bound, materialize, sorted_constants, sorted_facts,
    strictly_less, with_null,
)
from .index import FactIndex, join

__all__ = [
    "Closure",
    "Constant",
    "ConstantKind",
    "Fact",
    "IndefiniteDatabase",
    "Interpretation",
    "NULL",
    "Schema",
    "TruthValue",
    "compatible",
    "constants_of",
    "db_truth",
    "fact_universe",
    "in_closure",
    "interpretation",
    "leq_info",
    "least_upper_bound",
    "materialize",
    "sorted_constants",
    "sorted_facts",
    "strictly_less",
    "with_null",
    "FactIndex",
    "join",
]
