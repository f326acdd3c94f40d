import logging
import time
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from src.core.schemas import NULL, Constant, Fact
from src.core.service import compatible, fact_universe
from src.exceptions import BudgetExhaustedError, RepairPreconditionError
from src.repairs.schemas import SearchBudget, SearchStatus
from src.syntax.schemas import Instance, ProgramClass
from src.syntax.service import classify_program
from src.updates.schemas import ActionTarget, Update, UpdateAction
from src.updates.service import fulfills, is_effective
from src.views.grounding import ground_for_goals
from src.worlds.pool import fresh_numerals, fresh_symbols

logger = logging.getLogger(__name__)


def search_constants(inst: Instance, count: int) -> Tuple[List[Constant], List[Constant]]:
    """Relevant constants of the instance and request, and `count` fresh ones"""
    relevant = sorted(inst.constants(include_request=True))
    numeric = inst.has_builtin_le or any(c.is_numeral for c in relevant)
    if numeric:
        fresh = [Constant.numeral(v) for v in fresh_numerals([c.value for c in relevant if c.is_numeral], count)]
    else:
        used = {str(c.value) for c in relevant}
        fresh = [Constant.symbol(n) for n in fresh_symbols(used, count)]
    return relevant, fresh


class RepairSearch:
    """Iterative deepening over canonical updates, smallest and lexicographically first

    Candidate actions insert absent facts and delete present ones over the
    relevant constants, the fresh constants and null. Actions that cannot
    influence the request or the constraints do not change whether an update
    fulfils it, so fulfilment is memoised on the influential part.
    """

    def __init__(self, inst: Instance, budget: Optional[SearchBudget] = None):
        if inst.request is None:
            raise RepairPreconditionError("Repair search needs an instance with a request")
        self.inst = inst
        self.budget = budget or SearchBudget()
        self._started = time.monotonic()
        self.relevant, self.fresh = search_constants(inst, self.budget.fresh_constants)
        self.numeric = any(c.is_numeral for c in self.fresh)
        self.actions = self._candidate_actions()
        self._influential = self._influence()
        self._fulfils: Dict[FrozenSet[UpdateAction], bool] = {}
        self._effective: Dict[Tuple[UpdateAction, FrozenSet[UpdateAction]], bool] = {}
        self.candidates = 0
        self.checks = 0
        self.status = SearchStatus.COMPLETE
        self.reason: Optional[str] = None
        self._deadline: Optional[float] = None

    def _candidate_actions(self) -> List[UpdateAction]:
        constants = self.relevant + self.fresh + [NULL]
        universe = fact_universe(self.inst.schema.base_preds, constants)
        actions = []
        for target in self.budget.targets:
            present = self.inst.db.d_set if target == ActionTarget.D else self.inst.db.e_set
            for fact in universe:
                if fact in present:
                    actions.append(UpdateAction.delete(fact, target))
                else:
                    actions.append(UpdateAction.insert(fact, target))
        actions.sort()
        logger.debug("repair search vocabulary: %d candidate actions", len(actions))
        return actions

    def _influence(self) -> Set[UpdateAction]:
        """Actions that can change the request's valuation or the database's consistency"""
        inst = self.inst
        base = inst.schema.base_preds
        preds: Set[str] = {a.pred for c in inst.ics for a in c.atoms}
        preds |= {f.pred for f in inst.db.e_set}
        if classify_program(inst.view) == ProgramClass.GENERAL:
            preds |= {a.pred for r in inst.view for a in r.body_pos + r.body_neg}
        goals = inst.request.facts
        atoms: Set[Fact] = {g for g in goals if g.pred in base}
        program = ground_for_goals(inst.view, [g for g in goals if g.pred not in base], self.relevant + self.fresh)
        for rule in program.rules:
            atoms |= {f for f in rule.pos + rule.neg if f.pred in base}
        by_pred: Dict[str, List[Fact]] = {}
        for atom in atoms:
            by_pred.setdefault(atom.pred, []).append(atom)
        influential = set()
        for action in self.actions:
            fact = action.fact
            if action.target == ActionTarget.E or fact.pred in preds:
                influential.add(action)
            elif any(compatible(fact, g) for g in by_pred.get(fact.pred, ())):
                influential.add(action)
        logger.debug("%d of %d candidate actions can influence the request", len(influential), len(self.actions))
        return influential

    def _fresh_in_order(self, chosen: Tuple[UpdateAction, ...]) -> bool:
        """Fresh symbols are used as a prefix f1..fk in order of first occurrence"""
        if self.numeric or len(self.fresh) < 2:
            return True
        seen: List[Constant] = []
        for action in chosen:
            for c in action.fact.args:
                if c in self.fresh and c not in seen:
                    seen.append(c)
        return seen == self.fresh[:len(seen)]

    def _all_effective(self, update: Update) -> bool:
        """No action can be dropped without changing the truth of a fact of its predicate

        Skipped updates have the same worlds as the smaller update without the
        ineffective action, which is itself listed or skipped.
        """
        for action in update.actions:
            related = frozenset(
                a for a in update.actions if a != action and a.fact.pred == action.fact.pred
            )
            key = (action, related)
            if key not in self._effective:
                self._effective[key] = is_effective(self.inst.db, Update(actions=tuple(sorted(related | {action}))), action)
            if not self._effective[key]:
                return False
        return True

    def fulfils(self, update: Update) -> bool:
        key = frozenset(a for a in update.actions if a in self._influential)
        if key not in self._fulfils:
            self.checks += 1
            reduced = Update(actions=tuple(sorted(key)))
            self._fulfils[key] = fulfills(self.inst, reduced, self.budget.domain, self._deadline)
        return self._fulfils[key]

    def weak_repairs(self) -> List[Update]:
        """Every weak repair within the budget, in canonical order

        The deadline counts from the construction of the search and also bounds
        each fulfilment check.
        """
        found: List[Update] = []
        limit = self.budget.deadline_seconds
        self._deadline = self._started + limit if limit is not None else None
        size = 0
        try:
            for size in range(self.budget.max_update_size + 1):
                before = len(found)
                for chosen in combinations(self.actions, size):
                    if self._deadline is not None and time.monotonic() > self._deadline:
                        raise BudgetExhaustedError(f"deadline of {limit:g}s reached")
                    if not self._fresh_in_order(chosen):
                        continue
                    update = Update(actions=chosen)
                    if size and not self._all_effective(update):
                        continue
                    self.candidates += 1
                    if self.fulfils(update):
                        found.append(update)
                        if len(found) >= self.budget.max_results:
                            self._exhaust(f"max_results={self.budget.max_results} reached")
                            return found
                logger.debug(
                    "size %d: %d weak repairs, %d fulfilment checks so far", size, len(found) - before, self.checks,
                )
        except BudgetExhaustedError as error:
            self._exhaust(f"{error.reason} at update size {size}")
        finally:
            self._deadline = None
        return found

    def _exhaust(self, reason: str):
        self.status = SearchStatus.BUDGET_EXHAUSTED
        self.reason = reason
        logger.warning("repair search stopped: %s", reason)
