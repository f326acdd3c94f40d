import random
from itertools import product

import pytest

from src.core.schemas import Constant, Fact, TruthValue
from src.exceptions import InconsistentDatabaseError, StableModelCapExceededError
from src.views.answer_sets import answer_sets, brute_answer_sets, is_answer_set, least_model, stratified_model
from src.views.grounding import ground, ground_for_goals, ground_relevant
from src.views.reasoner import DeductiveReasoner, EnumerationReasoner
from src.views.schemas import GroundProgram, GroundRule, ReasoningStrategy
from src.views.service import answer_set_summaries, ddb_consistent, ddb_truth, ddb_truths
from tests.conftest import f


def numerals(*values):
    return [Constant.numeral(v) for v in values]


class TestGrounding:
    def test_full_grounding(self, join_request):
        program = ground(join_request.view, [Constant.symbol("a"), Constant.symbol("b")])
        assert len(program) == 8
        assert GroundRule.build(f("p", "a"), (f("q", "a", "b"), f("r", "a", "b", "a"))) in program.rules

    def test_variable_free_rule(self, odd_loop):
        program = ground(odd_loop.view, numerals(1, 2, 3))
        assert len(program) == 1
        assert program.negated_derived == [f("t")]
        assert not program.is_horn

    def test_relevant_grounding_follows_the_facts(self, two_level):
        program = ground_relevant(two_level.view, sorted(two_level.db.d_set) + [f("t", 1, 2, 3)])
        assert f("p", 1) in program.heads

    def test_goal_grounding(self, excluded_value):
        program = ground_for_goals(excluded_value.view, [f("q", 1)], numerals(1, 2))
        assert program.rules == (GroundRule.build(f("q", 1), (f("p", 1),)),)


class TestAnswerSets:
    def test_horn_least_model(self, excluded_value):
        program = ground(excluded_value.view, numerals(1, 2, 3))
        assert answer_sets(program, [f("p", 1)]) == [frozenset({f("p", 1), f("q", 1)})]

    def test_odd_loop_has_no_answer_set(self, odd_loop):
        program = ground(odd_loop.view, numerals(1, 2))
        assert answer_sets(program, [f("p", 1), f("p", 2)]) == []
        assert answer_sets(program, [f("p", 1)]) == [frozenset({f("p", 1)})]

    def test_even_loop_has_two(self):
        program = GroundProgram.of([
            GroundRule.build(f("a"), neg=(f("b"),)),
            GroundRule.build(f("b"), neg=(f("a"),)),
        ])
        assert answer_sets(program, []) == [frozenset({f("a")}), frozenset({f("b")})]
        assert is_answer_set(program, [], [f("a")])
        assert not is_answer_set(program, [], [f("a"), f("b")])

    def test_stratified_negation(self):
        program = GroundProgram.of([
            GroundRule.build(f("s", 1), (f("p", 1),), (f("r", 1),)),
            GroundRule.build(f("r", 1), (f("q", 1),)),
        ])
        assert stratified_model(program, [f("p", 1)]) == {f("p", 1), f("s", 1)}
        assert stratified_model(program, [f("p", 1), f("q", 1)]) == {f("p", 1), f("q", 1), f("r", 1)}

    def test_negation_cap(self):
        program = GroundProgram.of([GroundRule.build(f("a"), neg=(f("a"),))])
        with pytest.raises(StableModelCapExceededError):
            brute_answer_sets(program, [], negation_cap=0)

    def test_least_model_chains(self):
        rules = [
            GroundRule.build(f("r", 1), (f("p", 1),)),
            GroundRule.build(f("s", 1), (f("r", 1), f("q", 1))),
        ]
        assert least_model(rules, [f("p", 1)]) == {f("p", 1), f("r", 1)}
        assert least_model(rules, [f("p", 1), f("q", 1)]) == {f("p", 1), f("q", 1), f("r", 1), f("s", 1)}


def random_program(rng: random.Random):
    derived = [f("t", k) for k in range(1, 5)]
    base = [f("p", k) for k in range(1, 4)]
    rules = []
    for _ in range(rng.randint(1, 6)):
        head = rng.choice(derived)
        pos = tuple(rng.sample(base + derived, rng.randint(0, 2)))
        neg = tuple(rng.sample(base + derived, rng.randint(0, 1)))
        rules.append(GroundRule.build(head, pos, neg))
    world = rng.sample(base, rng.randint(0, 3))
    return GroundProgram.of(rules), world


class TestAnswerSetProperties:
    def test_stratified_model_is_the_only_answer_set(self):
        rng = random.Random(17)
        stratified = 0
        for _ in range(300):
            program, world = random_program(rng)
            model = stratified_model(program, world)
            if model is None:
                continue
            stratified += 1
            assert brute_answer_sets(program, world) == [frozenset(model)]
        assert stratified > 0

    def test_answer_sets_are_checked_by_the_reduct(self):
        rng = random.Random(5)
        for _ in range(200):
            program, world = random_program(rng)
            for model in answer_sets(program, world):
                assert is_answer_set(program, world, model)
                assert set(world) <= model


class TestDeductiveDatabase:
    def test_odd_loop_is_inconsistent(self, odd_loop):
        assert not ddb_consistent(odd_loop)

    def test_constraint_restores_consistency(self, odd_loop_constrained):
        assert ddb_consistent(odd_loop_constrained)

    def test_truth_in_excluded_value(self, excluded_value):
        expected = {
            f("p", None): TruthValue.TRUE,
            f("q", None): TruthValue.TRUE,
            f("p", 2): TruthValue.FALSE,
            f("q", 2): TruthValue.FALSE,
            f("p", 1): TruthValue.UNKNOWN,
            f("q", 3): TruthValue.UNKNOWN,
        }
        assert ddb_truths(excluded_value, list(expected)) == expected
        assert ddb_truth(excluded_value, f("q", 1)) == TruthValue.UNKNOWN

    def test_truth_needs_consistency(self, odd_loop):
        with pytest.raises(InconsistentDatabaseError):
            ddb_truth(odd_loop, f("t"))

    def test_strategy_follows_program_class(self, odd_loop, excluded_value):
        with DeductiveReasoner(odd_loop) as reasoner:
            assert reasoner.strategy == ReasoningStrategy.ENUMERATION
        with DeductiveReasoner(excluded_value) as reasoner:
            assert reasoner.strategy == ReasoningStrategy.COMPLETION

    def test_completion_agrees_with_enumeration(self, excluded_value, two_level):
        for instance in (excluded_value, two_level):
            with DeductiveReasoner(instance) as reasoner:
                facts = [
                    Fact.build(pred, args)
                    for pred, arity in {**instance.schema.base_preds, **instance.schema.derived_preds}.items()
                    for args in product(reasoner.pool.constants, repeat=arity)
                ]
                enumeration = EnumerationReasoner(
                    instance.db, instance.ics, reasoner.pool, instance.view, reasoner.budget,
                )
                try:
                    assert enumeration.is_consistent() == reasoner.is_consistent()
                    for fact in facts:
                        assert enumeration.truth(fact) == reasoner.truth(fact), str(fact)
                finally:
                    enumeration.close()

    def test_falsifying_model(self, excluded_value, odd_loop_constrained):
        with DeductiveReasoner(excluded_value) as reasoner:
            model = reasoner.falsifying_model([f("q", 1)], [])
            assert f("q", 1) not in model
            assert {a.args for a in model if a.pred == "q"} == {a.args for a in model if a.pred == "p"}
            assert reasoner.falsifying_model([f("q", None)], []) is None
            assert reasoner.falsifying_model([], [f("q", 2)]) is None
        with DeductiveReasoner(odd_loop_constrained) as reasoner:
            assert reasoner.strategy == ReasoningStrategy.ENUMERATION
            assert f("t") not in reasoner.falsifying_model([f("t")], [])
            assert reasoner.falsifying_model([], [f("t")]) is None

    def test_summaries(self, excluded_value):
        summaries = answer_set_summaries(excluded_value)
        assert len(summaries) == 3
        for summary in summaries:
            (model,) = summary.answer_sets
            assert {a.args for a in model if a.pred == "q"} == {a.args for a in summary.world}

