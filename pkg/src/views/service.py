import logging
from typing import Dict, Iterable, List, Optional

from src.core.schemas import Fact, TruthValue
from src.exceptions import InconsistentDatabaseError
from src.syntax.schemas import Instance
from src.views.reasoner import DeductiveReasoner, EnumerationReasoner
from src.views.schemas import AnswerSetSummary
from src.worlds.schemas import DomainBudget

logger = logging.getLogger(__name__)


def ddb_consistent(inst: Instance, budget: Optional[DomainBudget] = None) -> bool:
    """Every possible world of the database under its constraints exists and gives the view at least one answer set"""
    with DeductiveReasoner(inst, budget) as reasoner:
        consistent = reasoner.is_consistent()
        logger.debug("ddb consistency via %s: %s", reasoner.strategy.value, consistent)
        return consistent


def ddb_truth(inst: Instance, a: Fact, budget: Optional[DomainBudget] = None) -> TruthValue:
    """v_D(a): quantified over every answer set of every possible world"""
    return ddb_truths(inst, [a], budget)[a]


def ddb_truths(
    inst: Instance,
    facts: Iterable[Fact],
    budget: Optional[DomainBudget] = None,
) -> Dict[Fact, TruthValue]:
    """Truth values of many facts against one reasoner"""
    facts = list(facts)
    extra = {c for f in facts for c in f.constants}
    with DeductiveReasoner(inst, budget, extra=extra) as reasoner:
        if not reasoner.is_consistent():
            raise InconsistentDatabaseError("The deductive database is inconsistent")
        return {f: reasoner.truth(f) for f in facts}


def answer_set_summaries(inst: Instance, budget: Optional[DomainBudget] = None) -> List[AnswerSetSummary]:
    """Each possible world with the answer sets of the view over it"""
    reasoner = DeductiveReasoner(inst, budget)
    backend = reasoner.backend
    if not isinstance(backend, EnumerationReasoner):
        reasoner.close()
        backend = EnumerationReasoner(
            inst.db, inst.ics, reasoner.pool, inst.view, reasoner.budget,
        )
    try:
        return list(backend.summaries)
    finally:
        backend.close()
