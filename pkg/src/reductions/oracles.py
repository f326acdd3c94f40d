from itertools import product
from typing import Dict, Iterator, Optional, Sequence

from src.config import settings
from src.exceptions import FormulaShapeError
from src.reductions.schemas import Clause, CnfFormula, QbfFormula

Assignment = Dict[int, bool]


def _check_cap(count: int):
    if count > settings.FORMULA_VAR_CAP:
        raise FormulaShapeError(
            f"Formula has {count} variables, the oracle cap is {settings.FORMULA_VAR_CAP}", field="num_vars",
        )


def literal_holds(lit: int, assignment: Assignment) -> bool:
    return assignment[abs(lit)] == (lit > 0)


def cnf_holds(clauses: Sequence[Clause], assignment: Assignment) -> bool:
    return all(any(literal_holds(lit, assignment) for lit in clause) for clause in clauses)


def dnf_holds(conjuncts: Sequence[Clause], assignment: Assignment) -> bool:
    return any(all(literal_holds(lit, assignment) for lit in conjunct) for conjunct in conjuncts)


def satisfying_assignment(f: CnfFormula) -> Optional[Assignment]:
    """First satisfying assignment in truth-table order, all-false first"""
    f.check()
    _check_cap(f.num_vars)
    for values in product((False, True), repeat=f.num_vars):
        assignment = dict(zip(f.variables, values))
        if cnf_holds(f.clauses, assignment):
            return assignment
    return None


def brute_sat(f: CnfFormula) -> bool:
    """Truth-table satisfiability"""
    return satisfying_assignment(f) is not None


def x_assignments(q: QbfFormula) -> Iterator[Assignment]:
    """Every assignment of the existential atoms in truth-table order"""
    for x_values in product((False, True), repeat=len(q.x_vars)):
        yield dict(zip(q.x_vars, x_values))


def winning_assignments(q: QbfFormula) -> Iterator[Assignment]:
    """Each assignment of the existential atoms under which every assignment of Y satisfies the matrix"""
    q.check()
    _check_cap(len(q.x_vars) + len(q.y_vars))
    for x_values in x_assignments(q):
        if all(
            dnf_holds(q.dnf, {**x_values, **dict(zip(q.y_vars, y_values))})
            for y_values in product((False, True), repeat=len(q.y_vars))
        ):
            yield x_values


def brute_2qbf(q: QbfFormula) -> bool:
    """exists X forall Y by the truth table of both blocks"""
    return next(winning_assignments(q), None) is not None


# Second evaluators: clause simplification and quantifier expansion, sharing no code with the tables above.

def _simplify(clauses, var: int, value: bool):
    reduced = []
    for clause in clauses:
        if (var if value else -var) in clause:
            continue
        reduced.append(tuple(lit for lit in clause if abs(lit) != var))
    return reduced


def _split(clauses, variables) -> bool:
    if not clauses:
        return True
    if any(len(c) == 0 for c in clauses):
        return False
    var, rest = variables[0], variables[1:]
    return _split(_simplify(clauses, var, True), rest) or _split(_simplify(clauses, var, False), rest)


def brute_sat_recursive(f: CnfFormula) -> bool:
    """Satisfiability by splitting on variables in order"""
    f.check()
    _check_cap(f.num_vars)
    return _split([tuple(c) for c in f.clauses], f.variables)


def _expand(q: QbfFormula, order, partial: Assignment) -> bool:
    if len(partial) == len(order):
        return any(all(partial[abs(lit)] == (lit > 0) for lit in d) for d in q.dnf)
    var = order[len(partial)]
    branches = (_expand(q, order, {**partial, var: value}) for value in (True, False))
    return any(branches) if var in q.x_vars else all(branches)


def brute_2qbf_recursive(q: QbfFormula) -> bool:
    """Quantifier expansion: exists over X then forall over Y"""
    q.check()
    _check_cap(len(q.x_vars) + len(q.y_vars))
    return _expand(q, list(q.x_vars) + list(q.y_vars), {})
