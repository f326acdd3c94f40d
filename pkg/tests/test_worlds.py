import random
import time

import pytest

from src.core.index import FactIndex
from src.core.schemas import NULL, Closure, Constant, IndefiniteDatabase, TruthValue
from src.core.service import db_truth, fact_universe, in_closure
from src.exceptions import BudgetExhaustedError, InconsistentDatabaseError, UniverseCapExceededError
from src.syntax.schemas import Atom, Constraint
from src.worlds.constraints import eval_constraint, ground_constraint
from src.worlds.pool import candidate_universe, constant_pool, fresh_numerals, gap_classes
from src.worlds.reasoner import WorldReasoner
from src.worlds.schemas import DomainBudget, World
from src.worlds.service import (
    dbic_truth, enumerate_worlds, enumerate_worlds_brute, is_consistent, is_possible_world,
)
from tests.conftest import f


def numbers(world: World):
    return sorted(str(x) for x in world.sorted_facts)


class TestPossibleWorlds:
    def test_forced_null_world(self, forced_null):
        assert is_possible_world(World.of([f("p", 1), f("p", 2), f("q", 1)]), forced_null.db)

    def test_null_must_be_explained(self):
        assert not is_possible_world(World(), IndefiniteDatabase.of([f("p", None)]))

    def test_excluded_value_world(self, excluded_value):
        assert is_possible_world(World.of([f("p", 1), f("p", 3)]), excluded_value.db)

    def test_exceptions_are_excluded(self):
        i = IndefiniteDatabase.of([f("p", None)], [f("p", 1)])
        assert not is_possible_world(World.of([f("p", 1)]), i)


class TestConstraints:
    def test_forced_null_constraint(self, forced_null):
        assert not eval_constraint([f("p", 1), f("p", 2), f("q", 3)], forced_null.ics[0])
        assert eval_constraint([f("p", 1), f("p", 2), f("q", 1)], forced_null.ics[0])

    def test_vacuous_antecedent(self, forced_null):
        assert eval_constraint([f("p", 1)], forced_null.ics[0])

    def test_denial(self):
        denial = Constraint.universal(ante_pos=[Atom.of("val", "A", "true"), Atom.of("val", "A", "false")])
        assert eval_constraint([f("val", "a", "true")], denial)
        assert not eval_constraint([f("val", "a", "true"), f("val", "a", "false")], denial)

    def test_existential_witness(self):
        constraint = Constraint(
            exist_vars=("X",), univ_vars=(),
            ante_pos=(Atom.of("p", "X"),),
            cons_atoms=(Atom.of("q", "X"),),
        )
        # an outside value falsifies the antecedent
        assert eval_constraint([f("p", 1)], constraint)

    def test_ground_constraint_over_universe(self, forced_null):
        universe = FactIndex([f("p", 1), f("p", 2), f("q", 1), f("q", 3)])
        clauses = ground_constraint(forced_null.ics[0], universe)
        assert ((f("q", 3), False),) in clauses
        assert ((f("q", 1), False), (f("p", 1), True)) in clauses


class TestPool:
    def test_gap_classes(self):
        assert gap_classes([]) == 1
        assert gap_classes([2]) == 2
        assert gap_classes([1, 2]) == 1
        assert gap_classes([1, 3, 4, 7]) == 3

    def test_fresh_numerals_fill_gaps(self):
        assert fresh_numerals([2], 2) == [3, 1]
        assert fresh_numerals([1, 3], 3) == [4, 2, 5]

    def test_excluded_value_pool(self, excluded_value):
        pool = constant_pool(excluded_value.db, excluded_value.ics)
        assert [str(c) for c in pool.constants] == ["1", "2", "3"]

    def test_symbol_pool(self):
        pool = constant_pool(IndefiniteDatabase.of([f("q", "a", None)]))
        assert pool.fresh == (Constant.symbol("f1"),)

    def test_fixed_fresh_count(self, excluded_value):
        pool = constant_pool(excluded_value.db, excluded_value.ics, DomainBudget(fresh_symbol_count=0))
        assert [str(c) for c in pool.constants] == ["2"]

    def test_candidate_universe(self, forced_null):
        mandatory, optional = candidate_universe(forced_null.db, constant_pool(forced_null.db, forced_null.ics))
        assert mandatory == [f("p", 1), f("p", 2)]
        assert optional == [f("q", 1), f("q", 2), f("q", 3)]


class TestEnumeration:
    def test_excluded_value(self, excluded_value):
        worlds = enumerate_worlds(excluded_value.db, excluded_value.ics)
        assert [numbers(w) for w in worlds] == [["p(1)"], ["p(3)"], ["p(1)", "p(3)"]]

    def test_empty_instance(self):
        assert enumerate_worlds(IndefiniteDatabase()) == [World()]

    def test_forced_null(self, forced_null):
        worlds = enumerate_worlds(forced_null.db, forced_null.ics)
        assert [numbers(w) for w in worlds] == [
            ["p(1)", "p(2)", "q(1)"],
            ["p(1)", "p(2)", "q(2)"],
            ["p(1)", "p(2)", "q(1)", "q(2)"],
        ]

    def test_sat_path_matches_brute_force(self, forced_null):
        pool = constant_pool(forced_null.db, forced_null.ics)
        assert enumerate_worlds(forced_null.db, forced_null.ics) == enumerate_worlds_brute(forced_null.db, forced_null.ics, pool)

    def test_universe_cap(self):
        i = IndefiniteDatabase.of([f("q", None, None)])
        with pytest.raises(UniverseCapExceededError) as info:
            enumerate_worlds(i, budget=DomainBudget(world_universe_cap=3))
        assert info.value.cap == 3

    def test_constraint_never_adds_worlds(self, forced_null):
        unconstrained = enumerate_worlds(forced_null.db, budget=DomainBudget(fresh_symbol_count=1))
        constrained = enumerate_worlds(forced_null.db, forced_null.ics, DomainBudget(fresh_symbol_count=1))
        assert set(constrained) <= set(unconstrained)


class TestConsistency:
    def test_forced_null_is_consistent(self, forced_null):
        assert is_consistent(forced_null.db, forced_null.ics)

    def test_passed_deadline(self, forced_null):
        pool = constant_pool(forced_null.db, forced_null.ics)
        with pytest.raises(BudgetExhaustedError):
            WorldReasoner(forced_null.db, forced_null.ics, pool, deadline=time.monotonic() - 1)

    def test_falsifying_model(self, forced_null):
        pool = constant_pool(forced_null.db, forced_null.ics)
        with WorldReasoner(forced_null.db, forced_null.ics, pool) as reasoner:
            model = reasoner.falsifying_model([f("q", 1)], [])
            assert model == {f("p", 1), f("p", 2), f("q", 2)}
            assert reasoner.falsifying_model([f("q", None)], []) is None
            assert reasoner.falsifying_model([], [f("q", 3)]) is None
            assert f("q", 1) in reasoner.falsifying_model([], [f("q", 1)])

    def test_forced_fact_violates_denial(self):
        denial = Constraint.universal(ante_pos=[Atom.of("p", 1)])
        assert not is_consistent(IndefiniteDatabase.of([f("p", 1)]), [denial])

    def test_truth_in_forced_null(self, forced_null):
        expected = {
            f("p", 1): TruthValue.TRUE,
            f("p", 3): TruthValue.FALSE,
            f("q", 1): TruthValue.UNKNOWN,
            f("q", 2): TruthValue.UNKNOWN,
            f("q", 3): TruthValue.FALSE,
        }
        for fact, value in expected.items():
            assert dbic_truth(forced_null.db, forced_null.ics, fact) == value

    def test_truth_of_inconsistent_database(self):
        denial = Constraint.universal(ante_pos=[Atom.of("p", 1)])
        with pytest.raises(InconsistentDatabaseError):
            dbic_truth(IndefiniteDatabase.of([f("p", 1)]), [denial], f("p", 1))

    def test_constraints_refine_truth(self, forced_null):
        assert db_truth(forced_null.db, f("q", 3)) == TruthValue.UNKNOWN
        assert dbic_truth(forced_null.db, forced_null.ics, f("q", 3)) == TruthValue.FALSE


def random_instance(rng: random.Random):
    preds = {f"p{k}": rng.randint(1, 2) for k in range(rng.randint(1, 3))}
    constants = [Constant.numeral(v) for v in range(1, rng.randint(2, 4) + 1)]
    universe = fact_universe(preds, constants + [NULL])
    d_set = rng.sample(universe, min(len(universe), rng.randint(0, 5)))
    e_set = rng.sample(universe, min(len(universe), rng.randint(0, 5)))
    return IndefiniteDatabase.of(d_set, e_set), universe


class TestUnconstrainedTruth:
    def test_db_truth_agrees_with_worlds(self):
        """Without constraints, true means every world and false means no world"""
        rng = random.Random(2024)
        checked = 0
        for _ in range(300):
            i, universe = random_instance(rng)
            extra = {c for a in universe for c in a.constants}
            try:
                worlds = enumerate_worlds(i, budget=DomainBudget(world_universe_cap=16), extra=extra)
            except UniverseCapExceededError:
                continue
            if not worlds:
                continue
            for a in universe:
                hits = [in_closure(w.facts, a, Closure.DOWN) for w in worlds]
                value = db_truth(i, a)
                assert (value == TruthValue.TRUE) == all(hits), (i, a)
                if value == TruthValue.FALSE:
                    assert not any(hits), (i, a)
            checked += 1
        assert checked > 30

    def test_unknown_fact_outside_every_world(self):
        # p1(2,null) is only approximated through p1(2,2), which is an exception
        i = IndefiniteDatabase.of(
            [f("p1", 1, None), f("p1", None, 2), f("p2", None)],
            [f("p1", 1, 2), f("p1", 2, 2)],
        )
        a = f("p1", 2, None)
        worlds = enumerate_worlds(i, extra={Constant.numeral(1), Constant.numeral(2)})
        assert worlds
        assert not any(in_closure(w.facts, a, Closure.DOWN) for w in worlds)
        assert db_truth(i, a) == TruthValue.UNKNOWN
        assert dbic_truth(i, [], a) == TruthValue.FALSE
