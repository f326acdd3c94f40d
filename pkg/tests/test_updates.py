import pytest

from src.core.schemas import Constant, IndefiniteDatabase, TruthValue
from src.exceptions import ContradictoryUpdateError, RepairPreconditionError
from src.syntax.parser import parse_update
from src.updates.schemas import ActionTarget, Update, UpdateAction, is_update
from src.updates.service import (
    apply, apply_instance, canonicalize, comparison_atoms, fulfills, is_effective, leq_update,
    new_constants, profile_leq, strictly_below, valuation_profile,
)
from tests.conftest import f

T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNKNOWN


def update(inst, text):
    return parse_update(text, inst.schema)


class TestUpdateShape:
    def test_actions_are_sorted(self):
        u = Update.of([UpdateAction.insert(f("r", None)), UpdateAction.insert(f("q", 1))])
        assert str(u) == "{+q(1)@d, +r(null)@d}"

    def test_contradiction(self):
        with pytest.raises(ContradictoryUpdateError):
            Update.of([UpdateAction.insert(f("q", 1)), UpdateAction.delete(f("q", 1))])

    def test_same_fact_in_both_targets(self):
        actions = [UpdateAction.insert(f("q", 1)), UpdateAction.delete(f("q", 1), ActionTarget.E)]
        assert is_update(actions)
        assert len(Update.of(actions)) == 2

    def test_duplicates_collapse(self):
        assert len(Update.of([UpdateAction.insert(f("q", 1))] * 2)) == 1


class TestApply:
    def test_join_request_replacement(self, join_request):
        u = update(join_request, "-q(a,b)@d, +q(a,a)@d, +r(a,a,a)@d")
        assert apply(join_request.db, u).d_set == frozenset({f("q", "a", "a"), f("r", "a", "a", "a")})

    def test_exception_target(self):
        i = IndefiniteDatabase.of([f("p", None)])
        u = Update.of([UpdateAction.insert(f("p", 1), ActionTarget.E)])
        assert apply(i, u).e_set == frozenset({f("p", 1)})
        assert apply(i, u).d_set == i.d_set

    def test_empty_update_is_identity(self, two_requests):
        applied = apply_instance(two_requests, Update())
        assert applied.db.d_set == two_requests.db.d_set
        assert applied.db.e_set == two_requests.db.e_set

    def test_canonicalize_drops_no_ops(self, join_request):
        u = update(join_request, "+q(a,b)@d, -r(a,a,a)@d, +r(a,b,null)@d")
        assert canonicalize(join_request.db, u) == update(join_request, "+r(a,b,null)@d")


class TestNewConstants:
    def test_join_request(self, join_request):
        assert new_constants(join_request, update(join_request, "+q(c,g)@d")) == {Constant.symbol("c"), Constant.symbol("g")}

    def test_request_constants_are_not_new(self, join_request):
        assert new_constants(join_request, update(join_request, "+r(a,b,null)@d")) == set()

    def test_two_requests(self, two_requests):
        assert new_constants(two_requests, update(two_requests, "+q(1)@d, +r(3)@d")) == {Constant.numeral(3)}


class TestEffectiveness:
    def test_null_insert_is_effective(self, join_request):
        u = update(join_request, "+r(a,b,null)@d")
        assert is_effective(join_request.db, u, u.actions[0])

    def test_existing_fact_is_not(self, join_request):
        u = update(join_request, "+q(a,b)@d")
        assert not is_effective(join_request.db, u, u.actions[0])

    def test_redundant_exception(self):
        i = IndefiniteDatabase.of([f("p", 1)])
        action = UpdateAction.insert(f("p", 5), ActionTarget.E)
        assert not is_effective(i, Update.of([action]), action)

    def test_exception_hiding_a_null(self):
        i = IndefiniteDatabase.of([f("p", None)])
        action = UpdateAction.insert(f("p", 1), ActionTarget.E)
        assert is_effective(i, Update.of([action]), action)

    def test_action_outside_update(self, join_request):
        u = update(join_request, "+r(a,b,null)@d")
        assert not is_effective(join_request.db, u, UpdateAction.insert(f("q", "b", "b")))


class TestFulfills:
    def test_join_request(self, join_request):
        assert fulfills(join_request, update(join_request, "+r(a,b,null)@d"))
        assert not fulfills(join_request, Update())

    def test_null_pair_leaves_the_join_unknown(self, fresh_join):
        assert not fulfills(fresh_join, update(fresh_join, "+p(null)@d, +q(null)@d"))
        assert fulfills(fresh_join, update(fresh_join, "+p(a)@d, +q(a)@d"))

    def test_needs_a_request(self, forced_null):
        with pytest.raises(RepairPreconditionError):
            fulfills(forced_null, Update())


class TestComparison:
    def test_comparison_atoms(self, join_request):
        atoms = comparison_atoms(join_request)
        # a, b, one fresh symbol and null
        assert len(atoms) == 4 ** 2 + 4 ** 3
        assert f("r", "a", "b", None) in atoms

    def test_inconsistent_profile_is_all_true(self, odd_loop):
        atoms = [f("p", 1), f("p", 5)]
        assert valuation_profile(odd_loop, Update(), atoms) == [T, T]

    def test_profile_order(self):
        base = [T, F, U]
        assert profile_leq(base, [F, F, U], [F, T, U])
        assert not profile_leq(base, [F, T, U], [F, F, U])
        assert profile_leq(base, [T, F, U], [T, F, T])
        assert not profile_leq(base, [T, F, T], [T, F, F])

    def test_reflexive(self, join_request):
        u = update(join_request, "+r(a,b,null)@d")
        assert leq_update(join_request, u, u)
        assert not strictly_below(join_request, u, u)

    def test_fewer_changes_are_smaller(self, join_request):
        smaller = update(join_request, "+r(a,b,null)@d")
        larger = update(join_request, "-q(a,b)@d, +r(a,b,null)@d")
        assert strictly_below(join_request, smaller, larger)

    def test_new_constants_decide_first(self, join_request):
        u = update(join_request, "+r(a,b,c)@d")
        v = update(join_request, "-q(a,b)@d, +q(a,a)@d, +r(a,a,a)@d")
        assert not leq_update(join_request, u, v)
        assert leq_update(join_request, v, u)
