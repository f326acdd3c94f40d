import logging
from itertools import combinations
from typing import Iterable, List, Optional, Sequence

from src.core.schemas import Closure, Fact, IndefiniteDatabase, TruthValue
from src.core.service import db_truth, in_closure
from src.exceptions import InconsistentDatabaseError, UniverseCapExceededError
from src.syntax.schemas import Constraint
from src.worlds.constraints import eval_constraint
from src.worlds.pool import candidate_universe, constant_pool
from src.worlds.reasoner import WorldReasoner
from src.worlds.schemas import ConstantPool, DomainBudget, World

logger = logging.getLogger(__name__)


def is_possible_world(w: World, i: IndefiniteDatabase) -> bool:
    """I_t ⊆ W↓ and W ⊆ I_t ∪ I_u"""
    if not all(f.is_definite for f in w.facts):
        return False
    if not all(in_closure(w.facts, d, Closure.DOWN) for d in i.d_set):
        return False
    return all(db_truth(i, f) != TruthValue.FALSE for f in w.facts)


def world_reasoner(
    i: IndefiniteDatabase,
    ics: Sequence[Constraint] = (),
    budget: Optional[DomainBudget] = None,
    extra: Iterable = (),
) -> WorldReasoner:
    return WorldReasoner(i, ics, constant_pool(i, ics, budget, extra))


def enumerate_worlds(
    i: IndefiniteDatabase,
    ics: Sequence[Constraint] = (),
    budget: Optional[DomainBudget] = None,
    extra: Iterable = (),
) -> List[World]:
    """Possible worlds of the database under ics, over the budgeted constant pool, smallest worlds first"""
    budget = budget or DomainBudget()
    with world_reasoner(i, ics, budget, extra) as reasoner:
        worlds = reasoner.worlds(cap=budget.world_universe_cap)
        logger.debug("enumerated %d worlds with %d SAT calls", len(worlds), reasoner.sat_calls)
        return worlds


def enumerate_worlds_brute(
    i: IndefiniteDatabase,
    ics: Sequence[Constraint],
    pool: ConstantPool,
    cap: int = 16,
) -> List[World]:
    """Subset enumeration with direct checks; the reference the SAT path is compared against"""
    mandatory, optional = candidate_universe(i, pool)
    if len(optional) > cap:
        raise UniverseCapExceededError(len(optional), cap)
    worlds = []
    for size in range(len(optional) + 1):
        for chosen in combinations(optional, size):
            world = World.of(list(mandatory) + list(chosen))
            if is_possible_world(world, i) and all(eval_constraint(world.facts, c) for c in ics):
                worlds.append(world)
    return sorted(worlds, key=lambda w: w.sort_key)


def is_consistent(
    i: IndefiniteDatabase,
    ics: Sequence[Constraint] = (),
    budget: Optional[DomainBudget] = None,
) -> bool:
    """Whether the database under ics has a possible world within the pool"""
    with world_reasoner(i, ics, budget) as reasoner:
        return reasoner.is_consistent()


def dbic_truth(
    i: IndefiniteDatabase,
    ics: Sequence[Constraint],
    a: Fact,
    budget: Optional[DomainBudget] = None,
) -> TruthValue:
    """Truth of a in the database under ics, quantified over its possible worlds"""
    with world_reasoner(i, ics, budget, extra=a.constants) as reasoner:
        if not reasoner.is_consistent():
            raise InconsistentDatabaseError()
        return reasoner.truth(a)
