import pytest

from src.core.schemas import NULL, Constant
from src.exceptions import FormulaShapeError
from src.reductions.encoders import encode_consistency, encode_relevant_repair, encode_weak_repair, qbf_domain
from src.reductions.oracles import (
    brute_2qbf, brute_2qbf_recursive, brute_sat, brute_sat_recursive, satisfying_assignment, winning_assignments,
)
from src.reductions.schemas import CnfFormula, QbfFormula
from src.reductions.service import (
    assignment_satisfies, decode_assignment, dump_formula, load_formula, random_cnf, random_qbf,
    relevant_repair_exists, relevant_repair_witness, seeded_cnf, seeded_qbf,
)
from src.repairs.existence import exists_relevant_weak_repair, exists_weak_repair
from src.repairs.schemas import SearchBudget
from src.repairs.service import is_relevant
from src.updates.schemas import ActionTarget, Update, UpdateAction
from src.updates.service import apply, fulfills
from src.worlds.service import is_consistent
from tests.conftest import f

TAUTOLOGY = CnfFormula.of(1, [(1, 1, 1)])
CONTRADICTION = CnfFormula.of(1, [(1, 1, 1), (-1, -1, -1)])
X_WINS = QbfFormula.of([1], [2], [(1, 1, 1)])
Y_WINS = QbfFormula.of([1], [2], [(2, 2, 2)])


class TestFormulas:
    def test_text(self):
        assert str(CnfFormula.of(2, [(1, -2, 2)])) == "(x1 | ~x2 | x2)"
        assert str(QbfFormula.of([1], [2], [(1, -2, 2)])) == "exists x1 forall y2: (x1 & ~y2 & y2)"

    def test_unknown_variable(self):
        with pytest.raises(FormulaShapeError):
            CnfFormula.of(2, [(1, 2, 3)])

    def test_clause_width(self):
        with pytest.raises(FormulaShapeError):
            CnfFormula.of(2, [(1, 2)])

    def test_blocks_are_disjoint(self):
        with pytest.raises(FormulaShapeError) as info:
            QbfFormula.of([1], [1], [])
        assert info.value.field == "y_vars"

    def test_random_formulas_are_reproducible(self):
        assert random_cnf(7) == random_cnf(7)
        assert random_qbf(7) == random_qbf(7)
        formula = random_cnf(3, num_vars=5, num_clauses=6)
        assert formula.num_vars == 5 and len(formula.clauses) == 6
        q = random_qbf(3, 2, 1, 4)
        assert q.x_vars == (1, 2) and q.y_vars == (3,) and len(q.dnf) == 4

    def test_bad_random_shape(self):
        with pytest.raises(FormulaShapeError):
            random_cnf(1, num_vars=0)

    def test_formula_file(self):
        assert load_formula(dump_formula(X_WINS)) == X_WINS
        assert load_formula(dump_formula(CONTRADICTION)) == CONTRADICTION

    def test_unreadable_formula_file(self):
        with pytest.raises(FormulaShapeError):
            load_formula('{"formula": {"kind": "cnf"}}')
        with pytest.raises(FormulaShapeError):
            load_formula('{"formula": {"kind": "cnf", "num_vars": 1, "clauses": [[1, 2, 1]]}}')


class TestOracles:
    def test_sat(self):
        assert brute_sat(TAUTOLOGY)
        assert not brute_sat(CONTRADICTION)
        assert satisfying_assignment(CnfFormula.of(2, [(-1, -1, -2)])) == {1: False, 2: False}

    def test_qbf(self):
        assert brute_2qbf(X_WINS)
        assert not brute_2qbf(Y_WINS)
        assert list(winning_assignments(X_WINS)) == [{1: True}]

    def test_variable_cap(self):
        with pytest.raises(FormulaShapeError):
            brute_sat(CnfFormula.of(21, [(1, 2, 21)]))

    def test_two_evaluators_agree(self):
        for seed in range(200):
            cnf = seeded_cnf(seed, max_vars=5, max_clauses=8)
            assert brute_sat(cnf) == brute_sat_recursive(cnf), str(cnf)
            qbf = seeded_qbf(seed, max_x=3, max_y=3, max_conjuncts=4)
            assert brute_2qbf(qbf) == brute_2qbf_recursive(qbf), str(qbf)


class TestConsistencyEncoding:
    def test_shape(self):
        instance = encode_consistency(CnfFormula.of(2, [(1, -2, 2)]))
        assert f("val", "x1", None) in instance.db.d_set
        assert f("sat", "c1", None) in instance.db.d_set
        assert f("occur", "c1", 2, "x2", "false") in instance.db.d_set
        assert len(instance.ics) == 7
        assert instance.request is None and not instance.view

    def test_satisfiable(self):
        instance = encode_consistency(TAUTOLOGY)
        assert is_consistent(instance.db, instance.ics)

    def test_unsatisfiable(self):
        instance = encode_consistency(CONTRADICTION)
        assert not is_consistent(instance.db, instance.ics)

    @pytest.mark.slow
    def test_agrees_with_truth_tables(self):
        for seed in range(25):
            formula = seeded_cnf(seed, max_vars=3, max_clauses=3)
            instance = encode_consistency(formula)
            assert is_consistent(instance.db, instance.ics) == brute_sat(formula), str(formula)


class TestWeakRepairEncoding:
    def test_shape(self):
        instance = encode_weak_repair(CONTRADICTION)
        assert not instance.db.d_set
        assert f("occur'", "c2", 1, "x1", "false") in instance.request.want_true
        assert f("sat", "c1") in instance.request.want_true

    def test_satisfiable(self):
        witness = exists_weak_repair(encode_weak_repair(TAUTOLOGY))
        assert witness is not None
        assert f("val", "x1", "true") in witness.inserted(ActionTarget.D)
        assert decode_assignment(TAUTOLOGY, witness) == {1: True}

    def test_unsatisfiable(self):
        assert exists_weak_repair(encode_weak_repair(CONTRADICTION)) is None

    @pytest.mark.slow
    def test_decoded_assignment_satisfies(self):
        for seed in range(15):
            formula = seeded_cnf(seed, max_vars=3, max_clauses=3)
            witness = exists_weak_repair(encode_weak_repair(formula))
            assert (witness is not None) == brute_sat(formula), str(formula)
            if witness is not None:
                assert assignment_satisfies(formula, decode_assignment(formula, witness))


class TestRelevantRepairEncoding:
    def test_domain(self):
        assert [str(c) for c in qbf_domain(X_WINS)] == ["x1", "y2", "d1", "1", "2", "3", "true", "false"]

    def test_frozen_complements(self):
        instance = encode_relevant_repair(X_WINS)
        occur = [d for d in instance.db.d_set if d.pred == "occur"]
        occur_c = [d for d in instance.db.d_set if d.pred == "occur_c"]
        assert len(occur) == 3
        assert len(occur) + len(occur_c) == 8 ** 4
        assert f("inX", "x1") in instance.db.d_set
        assert f("inX_c", "y2") in instance.db.d_set

    def test_witness(self):
        witness = relevant_repair_witness(X_WINS, {1: True})
        assert witness.inserted(ActionTarget.D) == {
            f("val_X", "x1", "true"), f("val_Y", "y2", None), f("assign", None, "true"), f("assign", None, "false"),
        }
        assert witness.constants == frozenset(
            {Constant.symbol("x1"), Constant.symbol("y2"), Constant.symbol("true"), Constant.symbol("false")},
        )
        assert NULL not in witness.constants

    @pytest.mark.slow
    def test_true_formula(self):
        witness = relevant_repair_exists(X_WINS)
        assert witness == relevant_repair_witness(X_WINS, {1: True})

    @pytest.mark.slow
    def test_false_formula(self):
        assert relevant_repair_exists(Y_WINS) is None

    @pytest.mark.slow
    def test_one_universal_value_is_not_enough(self):
        # without assign(null, false) every world sets y2 true
        instance = encode_relevant_repair(Y_WINS)
        u = Update.of([
            UpdateAction.insert(f("val_X", "x1", "true")),
            UpdateAction.insert(f("val_Y", "y2", None)),
            UpdateAction.insert(f("assign", None, "true")),
        ])
        assert is_relevant(instance, u)
        assert not fulfills(instance, u)

    @pytest.mark.parametrize("fact", [
        f("inX", "y2"),
        f("inY", "x1"),
        f("occur", "d1", 1, "y2", "true"),
        f("assign", "true", "true"),
        f("assign", "x1", "false"),
    ])
    def test_frozen_facts_stay_frozen(self, fact):
        instance = encode_relevant_repair(X_WINS)
        updated = apply(instance.db, Update.of([UpdateAction.insert(fact)]))
        assert not is_consistent(updated, instance.ics)

    @pytest.mark.slow
    def test_decision_finds_a_repair_of_a_true_formula(self):
        instance = encode_relevant_repair(X_WINS)
        found = exists_relevant_weak_repair(instance, SearchBudget(deadline_seconds=None))
        assert found is not None
        assert is_relevant(instance, found)
        assert fulfills(instance, found)

    @pytest.mark.slow
    def test_decision_refutes_a_false_formula(self):
        instance = encode_relevant_repair(Y_WINS)
        assert exists_relevant_weak_repair(instance, SearchBudget(deadline_seconds=None)) is None
