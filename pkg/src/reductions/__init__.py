"""
Reductions Module

Executable hardness constructions and the formula oracles they are checked against.
It includes:

- 3-SAT to consistency of an indefinite database with constraints
- 3-SAT to existence of a weak repair
- ∃∀ 2QBF to existence of a relevant weak repair
- Seeded random formulas and JSON formula files

Key Components:
- encoders.py: encode_consistency, encode_weak_repair, encode_relevant_repair
- oracles.py: truth-table and recursive evaluators
- service.py: generators, decoding and the 2QBF witness family
- schemas.py: CnfFormula and QbfFormula
"""

from .encoders import encode_consistency, encode_relevant_repair, encode_weak_repair, qbf_domain
from .oracles import brute_2qbf, brute_2qbf_recursive, brute_sat, brute_sat_recursive, winning_assignments
from .schemas import CnfFormula, FormulaFile, QbfFormula
from .service import (
    decode_assignment, dump_formula, load_formula, random_cnf, random_qbf, relevant_repair_exists,
    relevant_repair_witness, seeded_cnf, seeded_qbf,
)

__all__ = [
    "encode_consistency",
    "encode_relevant_repair",
    "encode_weak_repair",
    "qbf_domain",
    "brute_2qbf",
    "brute_2qbf_recursive",
    "brute_sat",
    "brute_sat_recursive",
    "winning_assignments",
    "CnfFormula",
    "FormulaFile",
    "QbfFormula",
    "decode_assignment",
    "dump_formula",
    "load_formula",
    "random_cnf",
    "random_qbf",
    "relevant_repair_exists",
    "relevant_repair_witness",
    "seeded_cnf",
    "seeded_qbf",
]
