import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

from src.core.schemas import Closure, Constant, Fact, IndefiniteDatabase, TruthValue
from src.core.service import in_closure
from src.syntax.schemas import Constraint, Instance, ProgramClass, Rule
from src.syntax.service import classify_program, predicate_strata
from src.views.answer_sets import answer_sets
from src.views.grounding import ground_relevant
from src.views.schemas import AnswerSetSummary, GroundRule, ReasoningStrategy
from src.worlds.pool import constant_pool
from src.worlds.reasoner import WorldReasoner
from src.worlds.schemas import ConstantPool, DomainBudget

logger = logging.getLogger(__name__)

_TRUE = object()
_FALSE = object()


class CompletionReasoner(WorldReasoner):
    """World encoding extended with the completion of an acyclic view

    Acyclic programs have exactly one answer set per world, so every model of
    the extended CNF is a world together with its answer set.
    """

    def __init__(
        self,
        db: IndefiniteDatabase,
        ics: Sequence[Constraint],
        pool: ConstantPool,
        view: Sequence[Rule],
        solver_name: Optional[str] = None,
        deadline: Optional[float] = None,
    ):
        super().__init__(db, ics, pool, solver_name, deadline)
        self.view = list(view)
        self._encode_view()

    def _literal(self, fact: Fact):
        if self.is_fixed(fact):
            return _TRUE
        if fact in self.index:
            return self.var(fact)
        return _FALSE

    def _body(self, rule: GroundRule) -> Optional[List]:
        """Body literals still open, [] when the body certainly holds, None when it cannot"""
        literals = []
        for fact in rule.pos:
            lit = self._literal(fact)
            if lit is _FALSE:
                return None
            if lit is not _TRUE:
                literals.append(lit)
        for fact in rule.neg:
            lit = self._literal(fact)
            if lit is _TRUE:
                return None
            if lit is not _FALSE:
                literals.append(-lit)
        return literals

    def _define_and(self, target: int, literals: List[int]):
        for lit in literals:
            self.add_clause([-target, lit])
        self.add_clause([target] + [-lit for lit in literals])

    def _encode_view(self):
        program = ground_relevant(self.view, list(self.index))
        by_head: Dict[str, Dict[Fact, List[GroundRule]]] = {}
        for rule in program.rules:
            by_head.setdefault(rule.head.pred, {}).setdefault(rule.head, []).append(rule)
        counts = {"true": 0, "open": 0}
        for stratum in predicate_strata(self.view):
            self.check_deadline()
            for pred in stratum:
                for head, rules in by_head.get(pred, {}).items():
                    bodies = []
                    certain = False
                    for rule in rules:
                        body = self._body(rule)
                        if body is None:
                            continue
                        if not body:
                            certain = True
                            break
                        bodies.append(body)
                    if certain:
                        self.fixed[head] = None
                        self.index.add(head)
                        counts["true"] += 1
                        continue
                    if not bodies:
                        continue
                    counts["open"] += 1
                    self.index.add(head)
                    head_var = self.var(head)
                    if len(bodies) == 1:
                        self._define_and(head_var, bodies[0])
                        continue
                    supports = []
                    for i, body in enumerate(bodies):
                        if len(body) == 1:
                            supports.append(body[0])
                            continue
                        support = self.new_var(("body", head, i))
                        self._define_and(support, body)
                        supports.append(support)
                    self.add_clause([-head_var] + supports)
                    for support in supports:
                        self.add_clause([head_var, -support])
        logger.debug(
            "view completion: %d rule instances, %d derived facts certain, %d open",
            len(program), counts["true"], counts["open"],
        )


class EnumerationReasoner:
    """Enumerates worlds and computes the view's answer sets in each"""

    def __init__(
        self,
        db: IndefiniteDatabase,
        ics: Sequence[Constraint],
        pool: ConstantPool,
        view: Sequence[Rule],
        budget: DomainBudget,
        solver_name: Optional[str] = None,
        deadline: Optional[float] = None,
    ):
        self.view = list(view)
        self.budget = budget
        self.worlds_reasoner = WorldReasoner(db, ics, pool, solver_name, deadline)
        self._summaries: Optional[List[AnswerSetSummary]] = None

    @property
    def summaries(self) -> List[AnswerSetSummary]:
        if self._summaries is None:
            summaries = []
            for world in self.worlds_reasoner.worlds(cap=self.budget.world_universe_cap):
                self.worlds_reasoner.check_deadline()
                program = ground_relevant(self.view, world.sorted_facts)
                summaries.append(AnswerSetSummary(world=world.facts, answer_sets=answer_sets(program, world.facts)))
            self._summaries = summaries
            logger.debug("answer sets computed for %d worlds", len(summaries))
        return self._summaries

    @property
    def models(self) -> List[FrozenSet[Fact]]:
        return [m for s in self.summaries for m in s.answer_sets]

    def is_consistent(self) -> bool:
        if not self.worlds_reasoner.is_consistent():
            return False
        return all(s.answer_sets for s in self.summaries)

    def truth(self, fact: Fact) -> TruthValue:
        hits = [in_closure(m, fact, Closure.DOWN) for m in self.models]
        if all(hits):
            return TruthValue.TRUE
        if not any(hits):
            return TruthValue.FALSE
        return TruthValue.UNKNOWN

    def all_true(self, facts: Iterable[Fact]) -> bool:
        return all(self.truth(f) == TruthValue.TRUE for f in facts)

    def all_false(self, facts: Iterable[Fact]) -> bool:
        return all(self.truth(f) == TruthValue.FALSE for f in facts)

    def falsifying_model(self, want_true: Iterable[Fact], want_false: Iterable[Fact]) -> Optional[Set[Fact]]:
        want_true, want_false = list(want_true), list(want_false)
        for summary in self.summaries:
            for model in summary.answer_sets:
                if any(not in_closure(model, f, Closure.DOWN) for f in want_true) or any(
                    in_closure(model, f, Closure.DOWN) for f in want_false
                ):
                    return set(summary.world) | set(model)
        return None

    def close(self):
        self.worlds_reasoner.close()


class DeductiveReasoner:
    """Consistency and truth for a database with constraints and a view, over one constant pool

    Acyclic views are decided by SAT over the view's completion; recursive or
    non-stratified views by enumerating worlds and their answer sets.
    """

    def __init__(
        self,
        instance: Instance,
        budget: Optional[DomainBudget] = None,
        extra: Iterable[Constant] = (),
        pool: Optional[ConstantPool] = None,
        solver_name: Optional[str] = None,
        deadline: Optional[float] = None,
    ):
        self.instance = instance
        self.budget = budget or DomainBudget()
        if pool is None:
            extra = set(extra)
            if instance.request is not None:
                extra |= {c for f in instance.request.facts for c in f.constants}
            pool = constant_pool(instance.db, instance.ics, self.budget, extra, instance.view)
        self.pool = pool
        self.program_class = classify_program(instance.view)
        if self.program_class in (ProgramClass.EMPTY, ProgramClass.ACYCLIC_HORN, ProgramClass.ACYCLIC):
            self.strategy = ReasoningStrategy.COMPLETION
            self.backend = CompletionReasoner(instance.db, instance.ics, pool, instance.view, solver_name, deadline)
        else:
            self.strategy = ReasoningStrategy.ENUMERATION
            self.backend = EnumerationReasoner(
                instance.db, instance.ics, pool, instance.view, self.budget, solver_name, deadline,
            )
        self._consistent: Optional[bool] = None

    def is_consistent(self) -> bool:
        if self._consistent is None:
            self._consistent = self.backend.is_consistent()
        return self._consistent

    def truth(self, fact: Fact) -> TruthValue:
        return self.backend.truth(fact)

    def all_true(self, facts: Iterable[Fact]) -> bool:
        return self.backend.all_true(facts)

    def all_false(self, facts: Iterable[Fact]) -> bool:
        return self.backend.all_false(facts)

    def fulfills(self, want_true: Iterable[Fact], want_false: Iterable[Fact]) -> bool:
        """Consistent, every wanted-true fact true and every wanted-false fact false"""
        return self.is_consistent() and self.all_true(want_true) and self.all_false(want_false)

    def falsifying_model(self, want_true: Iterable[Fact], want_false: Iterable[Fact]) -> Optional[Set[Fact]]:
        """World facts and derived facts of a model that breaks the request, None when none does"""
        return self.backend.falsifying_model(want_true, want_false)

    def close(self):
        self.backend.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
