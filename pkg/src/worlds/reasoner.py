import logging
import time
from threading import Timer
from typing import Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from pysat.formula import IDPool
from pysat.solvers import Solver

from src.config import settings
from src.core.index import FactIndex
from src.core.schemas import Fact, IndefiniteDatabase, TruthValue
from src.exceptions import BudgetExhaustedError, UniverseCapExceededError
from src.syntax.schemas import Constraint
from src.worlds.constraints import ground_constraint
from src.worlds.pool import candidate_universe
from src.worlds.schemas import ConstantPool, World

logger = logging.getLogger(__name__)


class WorldReasoner:
    """Possible worlds of a database under its constraints over a constant pool, as a CNF over python-sat

    Every fact the reasoner knows about is either fixed true or a solver
    variable; facts it does not know are false in every model. Subclasses add
    more facts and clauses before the first query.

    With a deadline (a time.monotonic() timestamp), encoding steps and solver
    calls raise BudgetExhaustedError once it has passed; a running solver call
    is interrupted at the deadline.
    """

    def __init__(
        self,
        db: IndefiniteDatabase,
        ics: Sequence[Constraint],
        pool: ConstantPool,
        solver_name: Optional[str] = None,
        deadline: Optional[float] = None,
    ):
        self.db = db
        self.ics = list(ics)
        self.pool = pool
        self.solver_name = solver_name or settings.SAT_SOLVER
        self.deadline = deadline
        self.mandatory, self.optional = candidate_universe(db, pool)
        self.index = FactIndex(self.mandatory)
        for fact in self.optional:
            self.index.add(fact)
        self.fixed: Dict[Fact, None] = dict.fromkeys(self.mandatory)
        self.ids = IDPool()
        self.clauses: List[List[int]] = []
        self.contradiction = False
        self.sat_calls = 0
        self._solver: Optional[Solver] = None
        self._consistent: Optional[bool] = None
        self._top = self.ids.id(("top",))
        self.add_clause([self._top])
        for fact in self.optional:
            self.var(fact)
        self._encode_coverage()
        self._encode_constraints()
        logger.debug(
            "world encoding: %d mandatory, %d optional atoms, %d clauses",
            len(self.mandatory), len(self.optional), len(self.clauses),
        )

    # encoding

    def var(self, fact: Fact) -> int:
        key = ("atom", fact)
        if key not in self.ids.obj2id:
            self.add_clause([self._top, self.ids.id(key)])
        return self.ids.id(key)

    def new_var(self, tag: Hashable) -> int:
        return self.ids.id(tag)

    def add_clause(self, clause: Iterable[int]):
        clause = list(clause)
        if not clause:
            self.contradiction = True
            return
        self.clauses.append(clause)
        if self._solver is not None:
            self._solver.add_clause(clause)
        self._consistent = None

    def is_fixed(self, fact: Fact) -> bool:
        return fact in self.fixed

    def _encode_coverage(self):
        """Every indefinite fact of D needs some world atom above it"""
        for d in sorted(self.db.d_set):
            if d.is_definite:
                continue
            above = self.index.above(d)
            if any(self.is_fixed(f) for f in above):
                continue
            self.add_clause([self.var(f) for f in above])

    def _encode_constraints(self):
        for constraint in self.ics:
            self.check_deadline()
            for clause in ground_constraint(constraint, self.index, self.is_fixed):
                self.add_clause([self.var(f) if polarity else -self.var(f) for f, polarity in clause])

    # solving

    @property
    def solver(self) -> Solver:
        if self._solver is None:
            self._solver = Solver(name=self.solver_name, bootstrap_with=self.clauses)
        return self._solver

    def check_deadline(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhaustedError("deadline passed during a fulfilment check")

    def solve(self, assumptions: Sequence[int] = ()) -> bool:
        if self.contradiction:
            return False
        self.check_deadline()
        self.sat_calls += 1
        if self.deadline is None:
            return self.solver.solve(assumptions=list(assumptions))
        solver = self.solver
        timer = Timer(max(0.0, self.deadline - time.monotonic()), solver.interrupt)
        timer.start()
        try:
            status = solver.solve_limited(assumptions=list(assumptions), expect_interrupt=True)
        finally:
            timer.cancel()
        if status is None:
            solver.clear_interrupt()
            raise BudgetExhaustedError("deadline passed during a solver call")
        return status

    def _decode(self, model: Sequence[int]) -> Set[Fact]:
        """Fixed facts plus the facts whose variables the model sets"""
        facts = set(self.fixed)
        for lit in model:
            tag = self.ids.id2obj.get(lit) if lit > 0 else None
            if isinstance(tag, tuple) and tag[0] == "atom":
                facts.add(tag[1])
        return facts

    def close(self):
        if self._solver is not None:
            self._solver.delete()
            self._solver = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def is_consistent(self) -> bool:
        if self._consistent is None:
            self._consistent = self.solve()
        return self._consistent

    def upset(self, fact: Fact) -> Tuple[bool, List[int]]:
        """Whether a fixed fact lies above fact, and the variables of the others above it"""
        variables = []
        for f in self.index.above(fact):
            if self.is_fixed(f):
                return True, []
            variables.append(self.var(f))
        return False, variables

    def _with_activation(self, clause: List[int], tag: Hashable) -> bool:
        """Solve under a temporary clause, disabled afterwards"""
        act = self.new_var(("act", tag, len(self.clauses)))
        self.add_clause([-act] + clause)
        try:
            return self.solve([act])
        finally:
            self.add_clause([-act])

    def is_true(self, fact: Fact) -> bool:
        """Every model has a fact at least as informative as fact"""
        fixed, variables = self.upset(fact)
        if fixed:
            return True
        if not variables:
            return not self.is_consistent()
        return not self.solve([-v for v in variables])

    def is_false(self, fact: Fact) -> bool:
        """No model has a fact at least as informative as fact"""
        fixed, variables = self.upset(fact)
        if fixed:
            return not self.is_consistent()
        if not variables:
            return True
        return not self._with_activation(variables, ("false", fact))

    def truth(self, fact: Fact) -> TruthValue:
        if self.is_true(fact):
            return TruthValue.TRUE
        if self.is_false(fact):
            return TruthValue.FALSE
        return TruthValue.UNKNOWN

    def all_true(self, facts: Iterable[Fact]) -> bool:
        """Every fact is true, decided with one solver call"""
        guards = []
        for fact in facts:
            fixed, variables = self.upset(fact)
            if fixed:
                continue
            if not variables:
                return not self.is_consistent()
            guard = self.new_var(("missing", fact))
            for v in variables:
                self.add_clause([-guard, -v])
            guards.append(guard)
        if not guards:
            return True
        return not self._with_activation(guards, "all_true")

    def all_false(self, facts: Iterable[Fact]) -> bool:
        """Every fact is false, decided with one solver call"""
        variables: List[int] = []
        for fact in facts:
            fixed, above = self.upset(fact)
            if fixed:
                return not self.is_consistent()
            variables.extend(above)
        if not variables:
            return True
        return not self._with_activation(sorted(set(variables)), "all_false")

    def falsifying_model(self, want_true: Iterable[Fact], want_false: Iterable[Fact]) -> Optional[Set[Fact]]:
        """A model lacking some wanted-true fact or holding a wanted-false one, or None"""
        options: List[int] = []
        for fact in want_true:
            fixed, variables = self.upset(fact)
            if fixed:
                continue
            if not variables:
                options = [self._top]
                break
            guard = self.new_var(("missing", fact))
            for v in variables:
                self.add_clause([-guard, -v])
            options.append(guard)
        for fact in want_false:
            fixed, variables = self.upset(fact)
            if fixed:
                options = [self._top]
                break
            options.extend(variables)
        if not options:
            return None
        act = self.new_var(("act", "falsify", len(self.clauses)))
        self.add_clause([-act] + sorted(set(options)))
        try:
            if not self.solve([act]):
                return None
            return self._decode(self.solver.get_model())
        finally:
            self.add_clause([-act])

    def models(self, projection: Sequence[Fact], cap: Optional[int] = None) -> Iterator[List[Fact]]:
        """Distinct assignments of the projection facts over all models, in solver order"""
        if cap is not None and len(projection) > cap:
            raise UniverseCapExceededError(len(projection), cap)
        variables = [(f, self.var(f)) for f in projection]
        block_tag = ("enumeration", len(self.clauses))
        act = self.new_var(block_tag)
        try:
            while self.solve([act]):
                model = set(lit for lit in self.solver.get_model() if lit > 0)
                chosen = [f for f, v in variables if v in model]
                yield chosen
                self.add_clause([-act] + [-v if v in model else v for _, v in variables])
                if not variables:
                    break
        finally:
            self.add_clause([-act])

    def worlds(self, cap: Optional[int] = None) -> List[World]:
        """All possible worlds, ordered by cardinality then lexicographically"""
        found = [World.of(list(self.mandatory) + chosen) for chosen in self.models(self.optional, cap)]
        return sorted(found, key=lambda w: w.sort_key)
