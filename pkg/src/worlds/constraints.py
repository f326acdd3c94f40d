from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from src.core.index import Binding, FactIndex, join, match
from src.core.schemas import Constant, Fact
from src.exceptions import ConstraintEvaluationError
from src.syntax.schemas import Atom, Comparison, ComparisonOp, Constraint, Variable

# A ground clause: (fact, polarity) literals, satisfied when some fact's membership matches its polarity.
GroundClause = Tuple[Tuple[Fact, bool], ...]


def resolve(term, binding: Binding) -> Constant:
    if isinstance(term, Variable):
        return binding[term.name]
    return term


def ground_atom(atom: Atom, binding: Binding) -> Fact:
    return Fact.build(atom.pred, tuple(resolve(t, binding) for t in atom.args))


def evaluate_builtin(builtin: Comparison, binding: Binding) -> bool:
    left, right = resolve(builtin.left, binding), resolve(builtin.right, binding)
    if builtin.op == ComparisonOp.EQ:
        return left == right
    if not (left.is_numeral and right.is_numeral):
        raise ConstraintEvaluationError(f"'<=' needs numerals, got {left} <= {right}")
    return left.value <= right.value


def _holds(constraint: Constraint, binding: Binding, contains: Callable[[Fact], bool]) -> bool:
    """Whether ante -> cons holds under a binding covering every variable"""
    if any(contains(ground_atom(a, binding)) for a in constraint.ante_neg):
        return True
    if not all(evaluate_builtin(b, binding) for b in constraint.ante_builtins):
        return True
    if any(contains(ground_atom(a, binding)) for a in constraint.cons_atoms):
        return True
    return any(evaluate_builtin(b, binding) for b in constraint.cons_builtins)


def _universal_holds(constraint: Constraint, index: FactIndex, binding: Binding) -> bool:
    patterns = [a.pattern for a in constraint.ante_pos]
    return all(_holds(constraint, b, index.__contains__) for b in join(patterns, index, binding))


def outside_value(constants: Iterable[Constant]) -> Constant:
    """A definite constant different from all of constants"""
    constants = list(constants)
    numerals = [c.value for c in constants if c.is_numeral]
    if numerals or not constants:
        return Constant.numeral(max(numerals, default=0) + 1)
    used = {c.value for c in constants if c.is_symbol}
    i = 1
    while f"w{i}" in used:
        i += 1
    return Constant.symbol(f"w{i}")


def eval_constraint(world: Iterable[Fact], constraint: Constraint) -> bool:
    """First-order satisfaction of a constraint in a world, by finite instantiation

    Universal variables only need values from the world (they occur in positive
    antecedent atoms); existential variables additionally try one outside value.
    """
    index = world if isinstance(world, FactIndex) else FactIndex(world)
    if constraint.is_universal:
        return _universal_holds(constraint, index, {})
    domain = {a for f in index for a in f.args if not a.is_null} | {
        c for c in constraint.constants if not c.is_null
    }
    candidates = sorted(domain) + [outside_value(domain)]
    for values in product(candidates, repeat=len(constraint.exist_vars)):
        binding = dict(zip(constraint.exist_vars, values))
        if _universal_holds(constraint, index, binding):
            return True
    return False


def ground_constraint(
    constraint: Constraint,
    universe: FactIndex,
    fixed_true: Optional[Callable[[Fact], bool]] = None,
) -> List[GroundClause]:
    """Ground instances of a universal constraint as clauses over the universe

    Positive antecedent atoms are joined against the universe; atoms outside it
    are false in every world and are simplified away, as are facts for which
    `fixed_true` holds. Constraints with existential variables are always
    satisfiable by an outside witness and yield nothing.
    """
    if not constraint.is_universal:
        return []
    fixed_true = fixed_true or (lambda f: False)
    clauses: List[GroundClause] = []
    seen: Dict[GroundClause, None] = {}
    patterns = [a.pattern for a in constraint.ante_pos]
    for binding in join(patterns, universe):
        if not all(evaluate_builtin(b, binding) for b in constraint.ante_builtins):
            continue
        if any(evaluate_builtin(b, binding) for b in constraint.cons_builtins):
            continue
        literals: List[Tuple[Fact, bool]] = []
        satisfied = False
        for atom in constraint.ante_pos:
            fact = ground_atom(atom, binding)
            if not fixed_true(fact):
                literals.append((fact, False))
        for atom in constraint.ante_neg + constraint.cons_atoms:
            fact = ground_atom(atom, binding)
            if fixed_true(fact):
                satisfied = True
                break
            if fact in universe:
                literals.append((fact, True))
        if satisfied:
            continue
        clause = tuple(dict.fromkeys(literals))
        if clause not in seen:
            seen[clause] = None
            clauses.append(clause)
    return clauses


def clause_holds(clause: Sequence[Tuple[Fact, bool]], world: Iterable[Fact]) -> bool:
    members = set(world)
    return any((fact in members) == polarity for fact, polarity in clause)


def violated_bindings(constraint: Constraint, world: FactIndex) -> List[Binding]:
    """Bindings of a universal constraint's antecedent that the world falsifies"""
    if not constraint.is_universal:
        return []
    patterns = [a.pattern for a in constraint.ante_pos]
    return [dict(b) for b in join(patterns, world) if not _holds(constraint, b, world.__contains__)]


def breaks_through(
    constraint: Constraint,
    fact: Fact,
    others: FactIndex,
    contains: Callable[[Fact], bool],
) -> bool:
    """Whether some antecedent binding that places fact at a positive atom, and draws the other
    positive atoms from `others`, fails the constraint when `contains` decides the remaining atoms
    """
    if not constraint.is_universal:
        return False
    patterns = [a.pattern for a in constraint.ante_pos]
    for k, (pred, args) in enumerate(patterns):
        if pred != fact.pred:
            continue
        start = match(args, fact.args, {})
        if start is None:
            continue
        for binding in join(patterns[:k] + patterns[k + 1:], others, start):
            if not _holds(constraint, binding, contains):
                return True
    return False
