import logging
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from src.core.schemas import NULL, Constant, Fact
from src.exceptions import ContradictoryUpdateError, RepairPreconditionError
from src.repairs.schemas import RepairClass, RepairResult, SearchBudget, SearchStatus, UpdateClassification
from src.repairs.search import RepairSearch
from src.syntax.schemas import Instance
from src.updates.schemas import Update
from src.updates.service import (
    canonicalize, changes, changes_leq, comparison_atoms, fulfills, nc_leq, new_constants,
    representatives, valuation_profile,
)
from src.worlds.schemas import DomainBudget

logger = logging.getLogger(__name__)


def find_weak_repairs(inst: Instance, budget: Optional[SearchBudget] = None) -> RepairResult:
    """All weak repairs within the budget, smallest first"""
    search = RepairSearch(inst, budget)
    updates = search.weak_repairs()
    return RepairResult(
        repair_class=RepairClass.WEAK,
        updates=updates,
        status=search.status,
        reason=search.reason,
        candidates=search.candidates,
        checks=search.checks,
    )


def is_relevant(inst: Instance, u: Update) -> bool:
    """Every constant and predicate of u occurs in the instance or the request"""
    return set(u.constants) <= inst.constants(include_request=True) and set(u.predicates) <= inst.predicates(
        include_request=True
    )


def minimal_updates(
    inst: Instance,
    updates: List[Update],
    domain: Optional[DomainBudget] = None,
) -> List[Update]:
    """Updates of the list with no other update of the list strictly below them in the update preorder"""
    if len(updates) < 2:
        return list(updates)
    atoms = comparison_atoms(inst, updates)
    base = valuation_profile(inst, Update(), atoms, domain)
    nc = [new_constants(inst, u) for u in updates]
    diffs = [changes(base, valuation_profile(inst, u, atoms, domain)) for u in updates]

    def leq(i: int, j: int) -> bool:
        decided = nc_leq(nc[i], nc[j])
        if decided is not None:
            return decided
        return changes_leq(base, diffs[i], diffs[j])

    minimal = []
    for j, u in enumerate(updates):
        if not any(i != j and leq(i, j) and not leq(j, i) for i in range(len(updates))):
            minimal.append(u)
    logger.debug("%d of %d updates are minimal over %d comparison atoms", len(minimal), len(updates), len(atoms))
    return minimal


def _occurrences(u: Update) -> Dict[Constant, List[Tuple[int, int]]]:
    found: Dict[Constant, List[Tuple[int, int]]] = {}
    for i, action in enumerate(u.actions):
        for k, c in enumerate(action.fact.args):
            if not c.is_null:
                found.setdefault(c, []).append((i, k))
    return found


def _replace(u: Update, positions, value: Constant) -> Update:
    actions = list(u.actions)
    by_action: Dict[int, List[int]] = {}
    for i, k in positions:
        by_action.setdefault(i, []).append(k)
    for i, slots in by_action.items():
        args = list(actions[i].fact.args)
        for k in slots:
            args[k] = value
        actions[i] = actions[i].with_fact(Fact.build(actions[i].fact.pred, tuple(args)))
    return Update.of(actions)


def replacement_constants(inst: Instance, u: Update) -> List[Constant]:
    """Values an occurrence may be replaced with: relevant constants, null and one per gap"""
    relevant = inst.constants(include_request=True)
    known = relevant | set(u.constants)
    numeric = inst.has_builtin_le or any(c.is_numeral for c in known)
    return sorted(relevant | set(representatives(known, numeric))) + [NULL]


def is_constrained(inst: Instance, u: Update, budget: Optional[SearchBudget] = None) -> bool:
    """No replacement of some occurrences of a constant of u by another constant yields a weak repair"""
    budget = budget or SearchBudget()
    if not is_relevant(inst, u) or not fulfills(inst, u, budget.domain):
        raise RepairPreconditionError(f"{u} is not a relevant weak repair")
    replacements = replacement_constants(inst, u)
    for constant, positions in sorted(_occurrences(u).items()):
        for size in range(1, len(positions) + 1):
            for subset in combinations(positions, size):
                for value in replacements:
                    if value == constant:
                        continue
                    try:
                        candidate = _replace(u, subset, value)
                    except ContradictoryUpdateError:
                        continue
                    if fulfills(inst, candidate, budget.domain):
                        logger.debug("%s is arbitrary: %s is also a weak repair", u, candidate)
                        return False
    return True


def find_repairs(
    inst: Instance,
    cls: RepairClass = RepairClass.WEAK,
    budget: Optional[SearchBudget] = None,
) -> RepairResult:
    """Repairs of one class: the weak-repair stream filtered for relevance, minimality and constraint"""
    budget = budget or SearchBudget()
    weak = find_weak_repairs(inst, budget)
    updates = weak.updates
    if cls.needs_relevance:
        updates = [u for u in updates if is_relevant(inst, u)]
    if cls.needs_minimality:
        updates = minimal_updates(inst, updates, budget.domain)
    if cls.needs_constrained:
        updates = [u for u in updates if is_constrained(inst, u, budget)]
    qualifier = None
    if cls.needs_minimality:
        qualifier = f"minimal among updates of size <= {budget.max_update_size}"
    if weak.status == SearchStatus.BUDGET_EXHAUSTED and cls != RepairClass.WEAK:
        qualifier = "computed from a truncated weak-repair stream"
    return weak.model_copy(update={"repair_class": cls, "updates": updates, "qualifier": qualifier})


def classify_update(inst: Instance, u: Update, budget: Optional[SearchBudget] = None) -> UpdateClassification:
    """Weak, relevant and constrained flags of a given update"""
    budget = budget or SearchBudget()
    weak = fulfills(inst, u, budget.domain)
    relevant = is_relevant(inst, u)
    constrained = weak and relevant and is_constrained(inst, u, budget)
    return UpdateClassification(
        update=u,
        canonical=canonicalize(inst.db, u) == u,
        weak=weak,
        relevant=relevant,
        constrained=constrained,
        new_constants=sorted(new_constants(inst, u)),
    )
