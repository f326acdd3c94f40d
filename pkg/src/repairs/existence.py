"""
Existence of weak repairs without enumerating updates.

A weak repair exists iff some definite database W″ satisfies the constraints
and its view fulfils the request; "delete D and E, insert W″" is then a weak
repair. W″ is found by SAT over the goal-directed grounding of the view with
its completion; constraints are added lazily from the instances a candidate
W″ violates.

Relevant weak repairs must stay within the relevant constants and null, so
the updated database itself is guessed and each guess is refined with the
world that refutes it.
"""

import logging
import time
from itertools import product
from typing import Dict, Iterator, List, Optional, Set

from pysat.formula import IDPool
from pysat.solvers import Solver

from src.config import settings
from src.core.index import FactIndex
from src.core.schemas import NULL, Closure, Constant, Fact
from src.core.service import constants_of, fact_universe, in_closure, leq_info
from src.exceptions import BudgetExhaustedError, RepairPreconditionError
from src.repairs.schemas import SearchBudget, SearchStatus
from src.repairs.search import RepairSearch, search_constants
from src.repairs.service import is_relevant
from src.syntax.schemas import Constraint, Instance, ProgramClass, Rule, Variable
from src.syntax.service import classify_program, predicate_strata
from src.updates.schemas import ActionTarget, Update, UpdateAction
from src.updates.service import apply_instance, fulfills
from src.views.answer_sets import least_model
from src.views.grounding import ground_for_goals, ground_relevant
from src.views.reasoner import DeductiveReasoner
from src.views.schemas import GroundRule
from src.worlds.constraints import breaks_through, ground_atom, violated_bindings
from src.worlds.pool import completions, constant_pool

logger = logging.getLogger(__name__)

_COMPLETION_CLASSES = (ProgramClass.EMPTY, ProgramClass.ACYCLIC_HORN, ProgramClass.ACYCLIC)


class DatabaseGuess:
    """CNF whose models are definite databases together with their view"""

    keep_negation = True

    def __init__(self, inst: Instance, constants, solver_name: Optional[str] = None):
        self.inst = inst
        self.constants = list(constants)
        self.base = inst.schema.base_preds
        self.ids = IDPool()
        self.solver = Solver(name=solver_name or settings.SAT_SOLVER)
        self.base_vars: Dict[Fact, int] = {}
        self.derived_vars: Dict[Fact, int] = {}
        self.unsatisfiable = False

    def base_var(self, fact: Fact) -> int:
        if fact not in self.base_vars:
            self.base_vars[fact] = self.ids.id(("atom", fact))
        return self.base_vars[fact]

    def literal(self, fact: Fact) -> Optional[int]:
        """Variable of fact, or None when fact can never hold"""
        if fact.pred in self.base:
            return self.base_var(fact)
        return self.derived_vars.get(fact)

    def add_clause(self, clause: List[int]):
        if not clause:
            self.unsatisfiable = True
            return
        self.solver.add_clause(clause)

    def encode_view(self, goals: List[Fact]):
        program = ground_for_goals(self.inst.view, goals, self.constants)
        by_head: Dict[Fact, List[GroundRule]] = {}
        for rule in program.rules:
            by_head.setdefault(rule.head, []).append(rule)
        order = {p: i for i, stratum in enumerate(predicate_strata(self.inst.view)) for p in stratum}
        for head in sorted(by_head, key=lambda h: (order.get(h.pred, 0), h.sort_key)):
            supports = []
            for i, rule in enumerate(by_head[head]):
                literals = []
                dead = False
                for fact in rule.pos:
                    lit = self.literal(fact)
                    if lit is None:
                        dead = True
                        break
                    literals.append(lit)
                if dead:
                    continue
                for fact in rule.neg if self.keep_negation else ():
                    lit = self.literal(fact)
                    if lit is not None:
                        literals.append(-lit)
                support = self.ids.id(("body", head, i))
                for lit in literals:
                    self.add_clause([-support, lit])
                self.add_clause([support] + [-lit for lit in literals])
                supports.append(support)
            if not supports:
                continue
            var = self.ids.id(("atom", head))
            self.derived_vars[head] = var
            self.add_clause([-var] + supports)
            for support in supports:
                self.add_clause([var, -support])
        logger.debug(
            "database guess: %d rule instances, %d base and %d derived atoms",
            len(program), len(self.base_vars), len(self.derived_vars),
        )

    def encode_request(self):
        request = self.inst.request
        for fact in sorted(request.want_true):
            lits = [self.literal(c) for c in completions(fact, self.constants)]
            self.add_clause(sorted({lit for lit in lits if lit is not None}))
        for fact in sorted(request.want_false):
            for c in completions(fact, self.constants):
                lit = self.literal(c)
                if lit is not None:
                    self.add_clause([-lit])

    def model(self) -> Optional[Set[Fact]]:
        if self.unsatisfiable or not self.solver.solve():
            return None
        positive = {lit for lit in self.solver.get_model() if lit > 0}
        return {f for f, v in self.base_vars.items() if v in positive}

    def refine(self, world: Set[Fact]) -> int:
        """Add the clauses of every constraint instance the world violates"""
        index = FactIndex(world)
        added = 0
        for constraint in self.inst.ics:
            for binding in violated_bindings(constraint, index):
                clause = [-self.base_var(ground_atom(a, binding)) for a in constraint.ante_pos]
                clause += [self.base_var(ground_atom(a, binding)) for a in constraint.ante_neg]
                clause += [self.base_var(ground_atom(a, binding)) for a in constraint.cons_atoms]
                self.add_clause(clause)
                added += 1
        return added

    def close(self):
        self.solver.delete()


def witness_update(inst: Instance, world: Set[Fact]) -> Update:
    """Delete everything of D and E that W″ lacks, insert the rest of W″"""
    actions = [UpdateAction.delete(d) for d in inst.db.d_set if d not in world]
    actions += [UpdateAction.insert(w) for w in world if w not in inst.db.d_set]
    actions += [UpdateAction.delete(e, ActionTarget.E) for e in inst.db.e_set]
    return Update.of(actions)


def exists_weak_repair(inst: Instance, budget: Optional[SearchBudget] = None) -> Optional[Update]:
    """Some weak repair, or None when no definite database over the pool fulfils the request"""
    if inst.request is None:
        raise RepairPreconditionError("Repair existence needs an instance with a request")
    budget = budget or SearchBudget()
    if classify_program(inst.view) not in _COMPLETION_CLASSES:
        logger.debug("view is recursive, falling back to update enumeration")
        search = RepairSearch(inst, budget.model_copy(update={"max_results": 1}))
        found = search.weak_repairs()
        return found[0] if found else None

    relevant, fresh = search_constants(inst, budget.fresh_constants)
    constants = relevant + fresh
    guess = DatabaseGuess(inst, constants)
    try:
        derived_goals = [g for g in inst.request.facts if g.pred not in guess.base]
        guess.encode_view(derived_goals)
        guess.encode_request()
        rounds = 0
        while True:
            world = guess.model()
            if world is None:
                logger.debug("no database fulfils the request after %d refinement rounds", rounds)
                return None
            rounds += 1
            if not guess.refine(world):
                break
    finally:
        guess.close()

    update = witness_update(inst, world)
    if not fulfills(inst, update, budget.domain):
        logger.warning("witness database of %d facts failed the fulfilment check", len(world))
        return None
    logger.debug("weak repair witness found after %d rounds: %d actions", rounds, len(update))
    return update


# completions tried per fact when ruling a candidate out; facts with more are kept
_COMPLETION_CHECK_CAP = 400


def certain_facts(inst: Instance) -> Set[Fact]:
    """Definite base facts in every world of every weak repair

    A definite fact requested true is one, and so is the body of a derived
    fact requested true whose only rule copies a single base atom.
    """
    base = inst.schema.base_preds
    rules: Dict[str, List[Rule]] = {}
    for rule in inst.view:
        rules.setdefault(rule.head.pred, []).append(rule)
    copies: Dict[str, str] = {}
    for pred, defining in rules.items():
        if len(defining) != 1 or defining[0].body_neg or len(defining[0].body_pos) != 1:
            continue
        head, body = defining[0].head, defining[0].body_pos[0]
        names = [t.name for t in head.args if isinstance(t, Variable)]
        if body.pred in base and body.args == head.args and len(names) == len(set(names)) == len(head.args):
            copies[pred] = body.pred
    certain = set()
    for fact in inst.request.want_true:
        if not fact.is_definite:
            continue
        if fact.pred in base:
            certain.add(fact)
        elif fact.pred in copies:
            certain.add(Fact.build(copies[fact.pred], fact.args))
    return {c for c in certain if not any(leq_info(e, c) for e in inst.db.e_set)}


def nonmonotone_predicates(inst: Instance) -> Set[str]:
    """Base predicates whose extra facts can repair a constraint or block a rule"""
    preds = {a.pred for c in inst.ics for a in c.cons_atoms + c.ante_neg}
    preds |= {a.pred for r in inst.view for a in r.body_neg}
    return preds


class PatternGuess(DatabaseGuess):
    """Updated databases over the relevant constants and null, guessed through the base atoms they make available

    A base atom over the relevant constants and one stand-in for all other
    constants is available only when some chosen fact lies below it, the
    stand-in only under null. Negative view literals are left out, so every
    updated database with a world deriving the wanted-true facts satisfies
    the encoding.
    """

    keep_negation = False

    def __init__(
        self,
        inst: Instance,
        relevant: List[Constant],
        stand_in: Constant,
        candidates: List[Fact],
        certain: Set[Fact],
        solver_name: Optional[str] = None,
    ):
        super().__init__(inst, list(relevant) + [stand_in], solver_name)
        self.relevant = frozenset(relevant)
        self.certain = certain
        self.choices: Dict[Fact, int] = {fact: self.ids.id(("choose", fact)) for fact in candidates}
        self.covers: Dict[Fact, int] = {}

    def below(self, fact: Fact) -> Iterator[Fact]:
        """Facts over the relevant constants and null at most as informative as fact"""
        options = [(a, NULL) if a in self.relevant else (NULL,) for a in fact.args]
        for args in product(*options):
            yield Fact.build(fact.pred, tuple(args))

    def base_var(self, fact: Fact) -> int:
        if fact not in self.base_vars:
            var = self.ids.id(("available", fact))
            self.base_vars[fact] = var
            below = list(self.below(fact))
            if not any(b in self.certain for b in below):
                self.add_clause([-var] + [self.choices[b] for b in below if b in self.choices])
        return self.base_vars[fact]

    def cover_var(self, fact: Fact) -> int:
        """Implied by every chosen fact below the world fact"""
        if fact not in self.covers:
            var = self.ids.id(("cover", fact))
            self.covers[fact] = var
            for b in self.below(fact):
                if b in self.choices:
                    self.add_clause([-self.choices[b], var])
        return self.covers[fact]

    def encode_request(self):
        for fact in sorted(self.inst.request.want_true):
            lits = {self.literal(c) for c in completions(fact, self.constants)}
            self.add_clause(sorted(lit for lit in lits if lit is not None))

    def prefer(self, facts: Set[Fact]):
        """Try keeping the given facts and leaving the others out first"""
        self.solver.set_phases([v if f in facts else -v for f, v in self.choices.items()])

    def model(self) -> Optional[Set[Fact]]:
        if self.unsatisfiable or not self.solver.solve():
            return None
        positive = {lit for lit in self.solver.get_model() if lit > 0}
        return {f for f, v in self.choices.items() if v in positive}


def _support(rules: List[GroundRule], derived: Set[Fact], goal: Fact) -> Set[Fact]:
    """Facts of derived used by some firing rule instance on the way to a fact above goal"""
    firing: Dict[Fact, List[GroundRule]] = {}
    for rule in rules:
        if rule.head in derived and all(p in derived for p in rule.pos):
            firing.setdefault(rule.head, []).append(rule)
    agenda = [f for f in derived if leq_info(goal, f)]
    needed: Set[Fact] = set()
    while agenda:
        fact = agenda.pop()
        if fact in needed:
            continue
        needed.add(fact)
        for rule in firing.get(fact, ()):
            agenda.extend(rule.pos)
    return needed


class RelevantRepairDecision:
    """Whether a relevant weak repair on D exists, by counterexample-guided refinement

    Updated databases are guessed over the relevant constants and null. Each
    guess is checked over one fixed constant pool; a refuting world then
    yields a clause that excludes every database admitting that world with
    the same failure, so the loop ends after finitely many guesses.
    """

    def __init__(self, inst: Instance, budget: SearchBudget):
        self.inst = inst
        self.budget = budget
        self.base = inst.schema.base_preds
        self.relevant, fresh = search_constants(inst, 1)
        self.stand_in = fresh[0]
        domain = budget.domain
        if domain.fresh_symbol_count is None:
            domain = domain.model_copy(update={"fresh_symbol_count": domain.fresh_cap})
        self.pool = constant_pool(inst.db, inst.ics, domain, self.relevant, inst.view)
        self.certain = certain_facts(inst)
        self._certain_index = FactIndex(self.certain)
        self.nonmonotone = nonmonotone_predicates(inst)
        self.candidates = self._candidates()
        self.deadline: Optional[float] = None
        self.guess: Optional[PatternGuess] = None
        self.rounds = 0

    # candidate facts

    def _candidates(self) -> List[Fact]:
        """Facts an updated database may hold beyond the certain ones

        Null facts below a certain fact and facts whose every completion
        breaks a constraint are left out; removing them keeps a weak repair one.
        """
        used = self.inst.predicates(include_request=True)
        preds = {p: a for p, a in self.base.items() if p in used}
        possible = self._possible()
        kept = []
        redundant = impossible = 0
        for fact in fact_universe(preds, self.relevant + [NULL]):
            if fact in self.certain:
                continue
            if not fact.is_definite and fact.pred not in self.nonmonotone and self._certain_index.above(fact):
                redundant += 1
                continue
            if self._impossible(fact, possible):
                impossible += 1
                continue
            kept.append(fact)
        logger.debug(
            "relevant repair candidates: %d kept, %d certain, %d redundant, %d impossible",
            len(kept), len(self.certain), redundant, impossible,
        )
        return kept

    def _denials(self) -> List[Constraint]:
        return [c for c in self.inst.ics if c.is_universal and c.is_denial and not c.ante_neg]

    def _possible(self) -> Set[Fact]:
        """Facts of the predicates a constraint asks for or negates that no denial rules out"""
        preds = {a.pred for c in self.inst.ics for a in c.cons_atoms + c.ante_neg}
        universe = fact_universe({p: self.base[p] for p in preds}, self.pool.constants)
        denials = self._denials()
        return {
            fact for fact in universe
            if fact in self.certain
            or not any(breaks_through(c, fact, self._certain_index, lambda f: False) for c in denials)
        }

    def _excluded(self, fact: Fact, possible: Set[Fact]) -> bool:
        def contains(f: Fact) -> bool:
            return f == fact or f in self.certain or f in possible

        return any(breaks_through(c, fact, self._certain_index, contains) for c in self.inst.ics)

    def _impossible(self, fact: Fact, possible: Set[Fact]) -> bool:
        constants = self.pool.constants
        if len(constants) ** fact.null_count > _COMPLETION_CHECK_CAP:
            return False
        if self.pool.fresh:
            sample = Fact.build(fact.pred, tuple(self.pool.fresh[0] if a.is_null else a for a in fact.args))
            if not self._excluded(sample, possible):
                return False
        return all(self._excluded(c, possible) for c in completions(fact, constants))

    # refinement

    def _denial_clauses(self) -> List[List[int]]:
        """Definite candidates that a denial forbids together"""
        index = FactIndex(self.certain)
        for fact in self.candidates:
            if fact.is_definite:
                index.add(fact)
        clauses = []
        for constraint in self._denials():
            for binding in violated_bindings(constraint, index):
                atoms = {ground_atom(a, binding) for a in constraint.ante_pos}
                clauses.append(sorted(-self.guess.choices[a] for a in atoms if a in self.guess.choices))
        return clauses

    def _update(self, chosen: Set[Fact]) -> Update:
        kept = chosen | self.certain
        actions = [UpdateAction.delete(d) for d in self.inst.db.d_set if d not in kept]
        actions += [UpdateAction.insert(f) for f in kept if f not in self.inst.db.d_set]
        return Update.of(actions)

    def _exact_block(self, chosen: Set[Fact]) -> List[int]:
        return [-v if f in chosen else v for f, v in self.guess.choices.items()]

    def _consistent(self, chosen: Set[Fact]) -> bool:
        updated = apply_instance(self.inst, self._update(chosen))
        with DeductiveReasoner(updated, self.budget.domain, pool=self.pool, deadline=self.deadline) as reasoner:
            return reasoner.is_consistent()

    def _inconsistency_clause(self, chosen: Set[Fact]) -> List[int]:
        """Drop a fact of an inconsistent core, or add a fact that could satisfy a constraint

        Only facts of predicates no constraint asks for or negates are dropped
        from the core; extra facts of those predicates never give a database a world.
        """
        core = set(chosen)
        for fact in sorted(chosen):
            if fact.pred not in self.nonmonotone and not self._consistent(core - {fact}):
                core.discard(fact)
        logger.debug("inconsistent guess of %d facts, core of %d", len(chosen), len(core))
        clause = [-self.guess.choices[f] for f in sorted(core)]
        clause += [v for f, v in self.guess.choices.items() if f.pred in self.nonmonotone and f not in chosen]
        return clause

    def _inert(self, world: Set[Fact], model: Set[Fact], outside: List[Fact]) -> Set[Fact]:
        """Facts outside the world that a database may add without escaping the refutation

        Only for Horn views. Each fact is completed with a constant the world
        does not use; a completion must keep every constraint it takes part in
        satisfied by the world alone, and together the completions must leave
        the request broken: a wanted-false fact stays derived, or the support of
        a wanted-true fact they would derive is given up.
        """
        if any(rule.body_neg for rule in self.inst.view):
            return set()
        request = self.inst.request
        missing = [r for r in sorted(request.want_true) if not in_closure(model, r, Closure.DOWN)]
        if not missing and not any(in_closure(model, r, Closure.DOWN) for r in request.want_false):
            return set()
        spare = [c for c in self.pool.fresh if c not in constants_of(world)]
        filled: Dict[Fact, Fact] = {}
        for g in outside:
            if g.is_definite:
                filled[g] = g
            elif spare:
                c = Fact.build(g.pred, tuple(spare[0] if a.is_null else a for a in g.args))
                if not any(leq_info(e, c) for e in self.inst.db.e_set):
                    filled[g] = c
        index = FactIndex(world)
        for c in filled.values():
            index.add(c)
        clashing = [
            g for g, c in filled.items()
            if any(breaks_through(constraint, c, index, world.__contains__) for constraint in self.inst.ics)
        ]
        for g in clashing:
            del filled[g]
        if not missing:
            return set(filled)
        while filled:
            facts = set(world) | set(filled.values())
            program = ground_relevant(self.inst.view, facts)
            derived = least_model(program.rules, facts)
            if any(not in_closure(derived, r, Closure.DOWN) for r in missing):
                return set(filled)
            needed = _support(program.rules, derived, missing[0])
            helping = [g for g, c in filled.items() if c in needed]
            if not helping:
                return set()
            for g in helping:
                del filled[g]
        return set()

    def _world_clause(self, world: Set[Fact], model: Set[Fact]) -> List[int]:
        """Every database admitting the refuting world must give up one of its facts"""
        index = FactIndex(world)
        inside = {g for g in self.candidates if index.above(g)}
        outside = [g for g in self.candidates if g not in inside]
        inert = self._inert(world, model, outside)
        clause = [self.guess.choices[g] for g in outside if g not in inert]
        clause += [-self.guess.cover_var(w) for w in sorted(world) if w not in self.certain]
        return clause

    def _refutation(self, chosen: Set[Fact], update: Update) -> Optional[List[int]]:
        """None when the update fulfils the request over the fixed pool, else a clause to add"""
        request = self.inst.request
        with DeductiveReasoner(
            apply_instance(self.inst, update), self.budget.domain, pool=self.pool, deadline=self.deadline,
        ) as reasoner:
            consistent = reasoner.is_consistent()
            model = reasoner.falsifying_model(request.want_true, request.want_false) if consistent else None
        if not consistent:
            return self._inconsistency_clause(chosen)
        if model is None:
            return None
        world = {f for f in model if f.pred in self.base}
        return self._world_clause(world, model)

    def decide(self) -> Optional[Update]:
        limit = self.budget.deadline_seconds
        started = time.monotonic()
        self.deadline = started + limit if limit is not None else None
        self.guess = PatternGuess(self.inst, self.relevant, self.stand_in, self.candidates, self.certain)
        try:
            self.guess.encode_view([g for g in self.inst.request.want_true if g.pred not in self.base])
            self.guess.encode_request()
            for clause in self._denial_clauses():
                self.guess.add_clause(clause)
            self.guess.prefer(set(self.inst.db.d_set))
            while True:
                if self.deadline is not None and time.monotonic() > self.deadline:
                    raise BudgetExhaustedError(f"deadline of {limit:g}s reached after {self.rounds} refinement rounds")
                chosen = self.guess.model()
                if chosen is None:
                    logger.debug("no relevant weak repair after %d refinement rounds", self.rounds)
                    return None
                self.rounds += 1
                update = self._update(chosen)
                clause = self._refutation(chosen, update)
                if clause is None:
                    if fulfills(self.inst, update, self.budget.domain, self.deadline):
                        logger.debug("relevant weak repair found after %d rounds: %d actions", self.rounds, len(update))
                        return update
                    logger.debug("guess fulfils over the fixed pool only, excluding it")
                    clause = self._exact_block(chosen)
                self.guess.add_clause(clause)
        finally:
            self.guess.close()


def exists_relevant_weak_repair(inst: Instance, budget: Optional[SearchBudget] = None) -> Optional[Update]:
    """Some relevant weak repair on D, or None when there is none

    Views outside the completion classes and budgets that also update E fall
    back to the bounded search. Raises BudgetExhaustedError when the budget
    runs out before the question is settled.
    """
    if inst.request is None:
        raise RepairPreconditionError("Repair existence needs an instance with a request")
    budget = budget or SearchBudget()
    if classify_program(inst.view) not in _COMPLETION_CLASSES or budget.targets != (ActionTarget.D,):
        logger.debug("deciding relevant weak repairs by update enumeration")
        search = RepairSearch(inst, budget)
        for update in search.weak_repairs():
            if is_relevant(inst, update):
                return update
        if search.status == SearchStatus.BUDGET_EXHAUSTED:
            raise BudgetExhaustedError(search.reason)
        return None
    return RelevantRepairDecision(inst, budget).decide()
