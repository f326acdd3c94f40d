import logging
import random
from typing import List, Optional

from pydantic import ValidationError

from src.core.schemas import NULL, Constant, Fact
from src.exceptions import FormulaShapeError
from src.reductions.encoders import FALSE, TRUE, atom_name, encode_relevant_repair
from src.reductions.oracles import Assignment, cnf_holds, x_assignments
from src.reductions.schemas import CnfFormula, Formula, FormulaFile, QbfFormula
from src.repairs.existence import exists_relevant_weak_repair
from src.repairs.schemas import SearchBudget
from src.repairs.service import is_relevant
from src.syntax.schemas import Instance
from src.updates.schemas import ActionTarget, Update, UpdateAction
from src.updates.service import fulfills

logger = logging.getLogger(__name__)


def _signed(rng: random.Random, var: int) -> int:
    return var if rng.random() < 0.5 else -var


def random_cnf(seed: int, num_vars: int = 4, num_clauses: int = 4) -> CnfFormula:
    """A 3-CNF of exactly the given shape; literals may repeat a variable"""
    if num_vars < 1 or num_clauses < 0:
        raise FormulaShapeError(f"Bad CNF shape: {num_vars} variables, {num_clauses} clauses", field="shape")
    rng = random.Random(seed)
    clauses = [tuple(_signed(rng, rng.randint(1, num_vars)) for _ in range(3)) for _ in range(num_clauses)]
    return CnfFormula.of(num_vars, clauses)


def seeded_cnf(seed: int, max_vars: int = 4, max_clauses: int = 4) -> CnfFormula:
    """A 3-CNF whose shape is itself drawn from the seed"""
    if max_vars < 1 or max_clauses < 1:
        raise FormulaShapeError(f"Bad CNF bounds: {max_vars} variables, {max_clauses} clauses", field="shape")
    rng = random.Random(seed)
    return random_cnf(rng.randrange(2**32), rng.randint(1, max_vars), rng.randint(1, max_clauses))


def random_qbf(seed: int, num_x: int = 2, num_y: int = 2, num_conjuncts: int = 3) -> QbfFormula:
    """exists x1..xk forall y(k+1)..: a 3-DNF of exactly the given shape"""
    if num_x < 0 or num_y < 0 or num_x + num_y < 1 or num_conjuncts < 0:
        raise FormulaShapeError(
            f"Bad 2QBF shape: {num_x}+{num_y} variables, {num_conjuncts} conjuncts", field="shape",
        )
    rng = random.Random(seed)
    variables = list(range(1, num_x + num_y + 1))
    dnf = [tuple(_signed(rng, rng.choice(variables)) for _ in range(3)) for _ in range(num_conjuncts)]
    return QbfFormula.of(variables[:num_x], variables[num_x:], dnf)


def seeded_qbf(seed: int, max_x: int = 2, max_y: int = 2, max_conjuncts: int = 3) -> QbfFormula:
    rng = random.Random(seed)
    num_x, num_y = rng.randint(0, max_x), rng.randint(1, max_y)
    return random_qbf(rng.randrange(2**32), num_x, num_y, rng.randint(1, max_conjuncts))


def dump_formula(formula: Formula) -> str:
    return FormulaFile(formula=formula).model_dump_json(indent=2) + "\n"


def load_formula(text: str) -> Formula:
    try:
        formula = FormulaFile.model_validate_json(text).formula
    except ValidationError as error:
        raise FormulaShapeError(f"Unreadable formula file: {error.errors()[0]['msg']}") from error
    return formula.check()


def decode_assignment(f: CnfFormula, repair: Update) -> Assignment:
    """Truth values read off the val facts a weak repair of the weak-repair encoding inserts"""
    assignment = {v: False for v in f.variables}
    names = {atom_name(v): v for v in f.variables}
    for fact in repair.inserted(ActionTarget.D):
        if fact.pred == "val" and fact.args[0] in names and fact.args[1] == TRUE:
            assignment[names[fact.args[0]]] = True
    return assignment


def assignment_satisfies(f: CnfFormula, assignment: Assignment) -> bool:
    return cnf_holds(f.clauses, assignment)


def relevant_repair_witness(q: QbfFormula, x_values: Assignment) -> Update:
    """+val_X(x, value of x) per existential atom, +val_Y(y, null) per universal atom, +assign(null, true/false)"""
    actions: List[UpdateAction] = []
    for v in q.x_vars:
        value = TRUE if x_values[v] else FALSE
        actions.append(UpdateAction.insert(Fact.build("val_X", (Constant.symbol(q.name(v)), value))))
    for v in q.y_vars:
        actions.append(UpdateAction.insert(Fact.build("val_Y", (Constant.symbol(q.name(v)), NULL))))
    actions += [UpdateAction.insert(Fact.build("assign", (NULL, value))) for value in (TRUE, FALSE)]
    return Update.of(actions)


def relevant_repair_exists(
    q: QbfFormula,
    instance: Optional[Instance] = None,
    budget: Optional[SearchBudget] = None,
) -> Optional[Update]:
    """A relevant weak repair of the 2QBF encoding, or None

    The witness of each existential assignment is tried first; when none fulfils
    the request, the general relevant-repair decision settles the question.
    """
    instance = instance or encode_relevant_repair(q)
    budget = budget or SearchBudget()
    for x_values in x_assignments(q):
        witness = relevant_repair_witness(q, x_values)
        if is_relevant(instance, witness) and fulfills(instance, witness, budget.domain):
            logger.debug("existential assignment %s yields a relevant weak repair", x_values)
            return witness
    return exists_relevant_weak_repair(instance, budget)
