import random

import pytest

from src.core.schemas import NULL, Closure, Constant, Fact, IndefiniteDatabase, Schema, TruthValue
from src.core.service import (
    compatible, constants_of, db_truth, fact_universe, in_closure, interpretation, least_upper_bound,
    leq_info, materialize, strictly_less,
)
from src.exceptions import ArityMismatchError, UnknownPredicateError
from tests.conftest import f


class TestConstants:
    def test_coerce_shorthands(self):
        assert Constant.coerce(None) == NULL
        assert Constant.coerce("null") == NULL
        assert Constant.coerce(3) == Constant.numeral(3)
        assert Constant.coerce("a") == Constant.symbol("a")

    def test_numerals_must_be_positive(self):
        with pytest.raises(ValueError):
            Constant(kind="numeral", value=0)

    def test_canonical_order(self):
        ordered = sorted([Constant.symbol("b"), Constant.numeral(2), NULL, Constant.symbol("a"), Constant.numeral(1)])
        assert [str(c) for c in ordered] == ["null", "1", "2", "a", "b"]

    def test_fact_text_and_constants(self):
        fact = f("q", 1, None)
        assert str(fact) == "q(1,null)"
        assert fact.constants == frozenset({Constant.numeral(1)})
        assert not fact.is_definite
        assert str(f("t")) == "t"


class TestInformativeness:
    def test_leq_info(self):
        assert leq_info(f("q", 1, None), f("q", 1, 1))
        assert leq_info(f("q", 1, None), f("q", 1, None))
        assert not strictly_less(f("q", 1, None), f("q", 1, None))
        assert not leq_info(f("q", 1, None), f("q", 2, 1))

    def test_different_predicates_are_unrelated(self):
        assert not leq_info(f("p", None), f("q", 1))
        assert not compatible(f("p", 1), f("q", 1))

    def test_compatible(self):
        assert compatible(f("q", 1, None), f("q", None, 2))
        assert compatible(f("q", 1, 2), f("q", 1, 2))
        assert not compatible(f("q", 1, None), f("q", 2, 2))

    def test_least_upper_bound(self):
        assert least_upper_bound(f("q", 1, None), f("q", None, 2)) == f("q", 1, 2)
        assert least_upper_bound(f("q", 1, None), f("q", 2, 2)) is None


class TestClosures:
    def test_down_and_tilde(self):
        facts = [f("q", 1, None)]
        assert in_closure(facts, f("q", None, None), Closure.DOWN)
        assert in_closure(facts, f("q", 1, 2), Closure.TILDE)
        assert not in_closure(facts, f("q", 1, None), Closure.TILDE)

    @pytest.mark.parametrize("which", list(Closure))
    def test_empty_set_has_empty_closures(self, which):
        assert not in_closure([], f("p", 1), which)

    def test_up_closure_over_universe(self):
        universe = fact_universe({"q": 2}, [NULL, Constant.numeral(1), Constant.numeral(2)])
        up = materialize([f("q", 1, None)], universe, Closure.UP)
        assert up == {f("q", 1, None), f("q", 1, 1), f("q", 1, 2)}


class TestDbTruth:
    def test_exception_makes_known_value_false(self):
        i = IndefiniteDatabase.of([f("p", None)], [f("p", 1)])
        assert db_truth(i, f("p", 1)) == TruthValue.FALSE
        assert db_truth(i, f("p", None)) == TruthValue.TRUE
        assert db_truth(i, f("p", 2)) == TruthValue.UNKNOWN

    def test_exception_with_null_covers_a_row(self):
        i = IndefiniteDatabase.of([f("q", None, None), f("q", 1, 1)], [f("q", 1, None)])
        assert db_truth(i, f("q", 1, 2)) == TruthValue.FALSE
        assert db_truth(i, f("q", 2, 2)) == TruthValue.UNKNOWN
        assert db_truth(i, f("q", 1, 1)) == TruthValue.TRUE

    def test_empty_database_is_false_everywhere(self):
        assert db_truth(IndefiniteDatabase(), f("p", 1)) == TruthValue.FALSE

    def test_schema_checks(self):
        schema = Schema(base_preds={"p": 1})
        with pytest.raises(UnknownPredicateError):
            db_truth(IndefiniteDatabase(), f("r", 1), schema)
        with pytest.raises(ArityMismatchError):
            db_truth(IndefiniteDatabase(), f("p", 1, 2), schema)

    def test_truth_values_are_ordered(self):
        assert TruthValue.FALSE < TruthValue.UNKNOWN < TruthValue.TRUE
        assert max([TruthValue.UNKNOWN, TruthValue.TRUE, TruthValue.FALSE]) == TruthValue.TRUE


def random_database(rng: random.Random):
    preds = {f"p{k}": rng.randint(1, 2) for k in range(rng.randint(1, 3))}
    constants = [Constant.numeral(v) for v in range(1, rng.randint(2, 4) + 1)]
    pool = constants + [NULL]
    universe = fact_universe(preds, pool)
    d_set = rng.sample(universe, min(len(universe), rng.randint(0, 5)))
    e_set = rng.sample(universe, min(len(universe), rng.randint(0, 3)))
    return IndefiniteDatabase.of(d_set, e_set), universe


class TestProperties:
    def test_interpretation_partitions_universe(self):
        rng = random.Random(7)
        for _ in range(100):
            i, universe = random_database(rng)
            interp = interpretation(i, universe)
            assert interp.true_facts | interp.unknown_facts | interp.false_facts == set(universe)
            assert not interp.true_facts & interp.unknown_facts
            assert not interp.unknown_facts & interp.false_facts
            assert interp.true_facts == materialize(i.d_set, universe, Closure.DOWN)

    def test_approx_is_down_of_up(self):
        rng = random.Random(11)
        for _ in range(500):
            i, universe = random_database(rng)
            up = materialize(i.d_set, universe, Closure.UP)
            assert materialize(i.d_set, universe, Closure.APPROX) == materialize(up, universe, Closure.DOWN)

    def test_definite_databases_follow_the_closed_world(self):
        rng = random.Random(3)
        for _ in range(100):
            i, universe = random_database(rng)
            definite = IndefiniteDatabase.of([d for d in i.d_set if d.is_definite])
            for a in universe:
                if a.is_definite:
                    expected = TruthValue.TRUE if a in definite.d_set else TruthValue.FALSE
                    assert db_truth(definite, a) == expected

    def test_leq_info_is_a_partial_order(self):
        universe = fact_universe({"q": 2}, [NULL, Constant.numeral(1), Constant.numeral(2)])
        for a in universe:
            assert leq_info(a, a)
            for b in universe:
                if leq_info(a, b) and leq_info(b, a):
                    assert a == b
                for c in universe:
                    if leq_info(a, b) and leq_info(b, c):
                        assert leq_info(a, c)

    def test_constants_of_skips_null(self):
        assert constants_of([f("q", 1, None), f("p", "a")]) == {Constant.numeral(1), Constant.symbol("a")}
