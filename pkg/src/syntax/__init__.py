"""
Syntax Module

Instance files: grammar, parsing with positioned diagnostics, validation and
the canonical printer.
It includes:

- Declarations, db/except fact blocks, constraints, view rules and requests
- Single-fact and update-literal parsing for the command line
- Predicate dependency analysis and program classification

Key Components:
- grammar.py: the Lark grammar
- parser.py: parse_instance, parse_fact, parse_update
- validation.py: InstanceValidator
- printer.py: canonical text of instances and updates
- service.py: dependency graph, strata and program classes
- schemas.py: atoms, rules, constraints, requests and instances
"""

from .parser import parse_fact, parse_instance, parse_update, try_parse_instance
from .printer import print_constraint, print_fact, print_instance, print_rule, print_update
from .schemas import (
    Atom, Comparison, ComparisonOp, Constraint, Diagnostic, Instance, InstanceDraft,
    ProgramClass, Request, Rule, Variable,
)
from .service import check_acyclic, classify_program, predicate_strata
from .validation import InstanceValidator

__all__ = [
    "parse_fact",
    "parse_instance",
    "parse_update",
    "try_parse_instance",
    "print_constraint",
    "print_fact",
    "print_instance",
    "print_rule",
    "print_update",
    "Atom",
    "Comparison",
    "ComparisonOp",
    "Constraint",
    "Diagnostic",
    "Instance",
    "InstanceDraft",
    "ProgramClass",
    "Request",
    "Rule",
    "Variable",
    "check_acyclic",
    "classify_program",
    "predicate_strata",
    "InstanceValidator",
]
