import random

import pytest

from src.core.schemas import NULL, Constant, IndefiniteDatabase, Schema
from src.core.service import fact_universe
from src.exceptions import ContradictoryUpdateError, InstanceSyntaxError
from src.reductions.encoders import encode_consistency, encode_relevant_repair, encode_weak_repair
from src.reductions.schemas import CnfFormula, QbfFormula
from src.syntax.parser import parse_fact, parse_instance, parse_update, try_parse_instance
from src.syntax.printer import print_constraint, print_instance, print_update
from src.syntax.schemas import (
    Atom, Comparison, ComparisonOp, Constraint, Instance, ProgramClass, Request, Rule, Variable,
)
from src.syntax.service import check_acyclic, classify_program, predicate_strata
from src.syntax.validation import InstanceValidator
from src.updates.schemas import ActionTarget
from tests.conftest import f, instance_path


def codes(text: str):
    instance, diagnostics = try_parse_instance(text)
    assert instance is None
    return [d.error_code for d in diagnostics]


class TestParseInstance:
    def test_join_request(self, join_request):
        assert join_request.db.d_set == frozenset({f("q", "a", "b")})
        assert len(join_request.view) == 1
        assert join_request.request.want_true == frozenset({f("p", "a")})
        assert join_request.schema.base_preds == {"q": 2, "r": 3}
        assert join_request.schema.derived_preds == {"p": 1}

    def test_empty_sections(self):
        instance = parse_instance("db { } except { } ic { } view { }")
        assert not instance.db.d_set and not instance.ics and not instance.view
        assert instance.request is None

    def test_null_and_numerals(self, excluded_value):
        assert excluded_value.db.d_set == frozenset({f("p", None)})
        assert excluded_value.ics[0].is_denial
        assert excluded_value.ics[0].constants == {Constant.numeral(2)}

    def test_quantified_constraint(self):
        instance = parse_instance("base p/1, q/2.\nic { exists X forall Y : p(X), q(Y, X) -> p(Y). }")
        constraint = instance.ics[0]
        assert constraint.exist_vars == ("X",)
        assert constraint.univ_vars == ("Y",)
        assert print_constraint(constraint) == "exists X forall Y : p(X), q(Y,X) -> p(Y)."

    def test_negated_constraint_atoms_and_builtins(self):
        instance = parse_instance("base val/2, occ/2.\nic { occ(A, V), not val(A, V) -> V = true | V <= 3. }")
        constraint = instance.ics[0]
        assert [str(a) for a in constraint.ante_neg] == ["val(A,V)"]
        assert [str(b) for b in constraint.cons_builtins] == ["V = true", "V <= 3"]

    def test_keywords_stay_usable_as_constants(self):
        instance = parse_instance("base val/2.\ndb { val(x1, true). val(x2, false). }")
        assert f("val", "x1", "true") in instance.db.d_set


class TestDiagnostics:
    def test_unsafe_rule(self):
        assert "E005" in codes("base q/1.\nderived p/1.\nview { p(X) :- not q(X). }")

    def test_lexical_error_has_position(self):
        _, diagnostics = try_parse_instance("base p/1.\ndb { p(#). }")
        assert diagnostics[0].error_code == "E001"
        assert diagnostics[0].line == 2
        assert diagnostics[0].render("x.idb").startswith("x.idb:2:")

    def test_syntax_error(self):
        assert codes("base p/1.\ndb { p(1) }") == ["E002"]

    def test_arity_mismatch(self):
        assert "E003" in codes("base p/1.\ndb { p(1, 2). }")

    def test_undeclared_predicate(self):
        assert "E004" in codes("base p/1.\ndb { q(1). }")

    def test_null_in_view(self):
        assert "E006" in codes("base q/1.\nderived p/1.\nview { p(X) :- q(X), q(null). }")

    def test_null_in_constraint(self):
        assert "E007" in codes("base q/1.\nic { q(null) -> false. }")

    def test_le_on_symbols(self):
        assert "E008" in codes("base q/1.\nic { q(X) -> X <= a. }")

    def test_base_head(self):
        assert "E009" in codes("base p/1, q/1.\nview { p(X) :- q(X). }")

    def test_duplicate_declaration(self):
        assert "E010" in codes("base p/1.\nderived p/1.")

    def test_unsafe_constraint(self):
        assert "E011" in codes("base q/1.\nic { q(X) -> X = Y. }")

    def test_derived_in_database(self):
        assert "E012" in codes("derived p/1.\ndb { p(1). }")

    def test_request_overlap(self):
        assert "E013" in codes("base p/1.\nrequest { true: p(1); false: p(1); }")

    def test_builtin_in_view(self):
        assert "E014" in codes("base q/1.\nderived p/1.\nview { p(X) :- q(X), X = 1. }")

    def test_every_problem_is_reported(self):
        found = codes("base p/1.\ndb { q(1). p(1, 2). }")
        assert "E003" in found and "E004" in found

    def test_parse_instance_raises(self):
        with pytest.raises(InstanceSyntaxError) as info:
            parse_instance("db { q(1). }")
        assert info.value.diagnostics

    def test_validator_accepts_built_instance(self, two_level):
        assert InstanceValidator().validate(two_level) == []


def random_instance(rng: random.Random) -> Instance:
    base = {f"b{k}": rng.randint(0, 2) for k in range(rng.randint(1, 3))}
    derived = {f"v{k}": rng.randint(0, 2) for k in range(rng.randint(0, 2))}
    values = [Constant.numeral(n) for n in (1, 2, 3)] + [Constant.symbol("a"), Constant.symbol("true")]
    universe = fact_universe(base, values + [NULL])
    d_set = rng.sample(universe, min(len(universe), rng.randint(0, 6)))
    e_set = rng.sample(universe, min(len(universe), rng.randint(0, 3)))

    def atom(pred: str, arity: int, terms) -> Atom:
        return Atom.of(pred, *[rng.choice(terms) for _ in range(arity)])

    def bound(atoms) -> list:
        return sorted({v for a in atoms for v in a.variables})

    ics = []
    for _ in range(rng.randint(0, 3)):
        ante = [atom(p, base[p], ["X", "Y"] + values) for p in rng.sample(sorted(base), rng.randint(1, len(base)))]
        names = bound(ante)
        terms = names + values if names else values
        cons = [atom(p, base[p], terms) for p in rng.sample(sorted(base), rng.randint(0, 1))]
        neg = [atom(p, base[p], terms) for p in rng.sample(sorted(base), rng.randint(0, 1))]
        builtins = []
        if names and rng.random() < 0.5:
            builtins.append(Comparison(op=ComparisonOp.LE, left=Variable(name=names[0]), right=Constant.numeral(2)))
        ics.append(Constraint.universal(ante_pos=ante, ante_neg=neg, cons_atoms=cons, cons_builtins=builtins))

    view = []
    for pred, arity in derived.items():
        for _ in range(rng.randint(1, 2)):
            body = [atom(p, base[p], ["X", "Y"] + values) for p in rng.sample(sorted(base), rng.randint(1, len(base)))]
            names = bound(body)
            terms = names + values if names else values
            neg = [atom(p, base[p], terms) for p in rng.sample(sorted(base), rng.randint(0, 1))]
            view.append(Rule(head=atom(pred, arity, terms), body_pos=tuple(body), body_neg=tuple(neg)))

    preds = {**base, **derived}
    candidates = fact_universe(preds, values)
    wanted = rng.sample(candidates, min(2, len(candidates)))
    request = Request.of(want_true=wanted[:1], want_false=wanted[1:] if rng.random() < 0.5 else ())
    return Instance(
        schema_=Schema(base_preds=base, derived_preds=derived),
        db=IndefiniteDatabase.of(d_set, e_set),
        ics=tuple(ics),
        view=tuple(view),
        request=request,
    )


class TestPrinter:
    def test_round_trip_example_files(self):
        for name in ("join_request", "forced_null", "odd_loop", "odd_loop_constrained", "excluded_value",
                     "fresh_join", "two_requests", "two_level"):
            instance = parse_instance(instance_path(name).read_text(encoding="utf-8"))
            assert parse_instance(print_instance(instance)) == instance

    def test_print_is_canonical(self, two_requests):
        text = print_instance(two_requests)
        assert text.startswith("base h/1, p/1, q/1, r/1.\nderived s/0, t/0.\n")
        assert "db {\n  h(2).\n  p(1).\n}" in text
        assert print_instance(parse_instance(text)) == text

    def test_empty_instance_skeleton(self):
        assert print_instance(parse_instance("")) == "db {\n}\nexcept {\n}\nic {\n}\nview {\n}\n"

    def test_round_trip_encoder_output(self):
        cnf = CnfFormula.of(3, [(1, -2, 3), (-1, 2, 2)])
        qbf = QbfFormula.of([1], [2], [(1, -2, 2)])
        for instance in (encode_consistency(cnf), encode_weak_repair(cnf), encode_relevant_repair(qbf)):
            assert parse_instance(print_instance(instance)) == instance

    def test_round_trip_random_instances(self):
        rng = random.Random(17)
        for _ in range(200):
            instance = random_instance(rng)
            text = print_instance(instance)
            assert parse_instance(text) == instance, text


class TestProgramClasses:
    def test_two_level_is_acyclic(self, two_level):
        acyclic, report = check_acyclic(two_level.view)
        assert acyclic
        assert report.program_class == ProgramClass.ACYCLIC_HORN
        assert predicate_strata(two_level.view) == [["r"], ["p"]]

    def test_odd_loop_is_cyclic_through_negation(self, odd_loop):
        acyclic, report = check_acyclic(odd_loop.view)
        assert not acyclic
        assert report.cyclic_components == [["t"]]
        assert report.program_class == ProgramClass.GENERAL

    def test_empty_view(self):
        acyclic, report = check_acyclic([])
        assert acyclic
        assert report.program_class == ProgramClass.EMPTY

    def test_negation_without_cycle(self):
        rule = Rule(head=Atom.of("p", "X"), body_pos=(Atom.of("q", "X"),), body_neg=(Atom.of("r", "X"),))
        assert classify_program([rule]) == ProgramClass.ACYCLIC

    def test_positive_recursion_is_stratified(self):
        view = [
            Rule(head=Atom.of("reach", "X", "Y"), body_pos=(Atom.of("edge", "X", "Y"),)),
            Rule(head=Atom.of("reach", "X", "Z"), body_pos=(Atom.of("reach", "X", "Y"), Atom.of("edge", "Y", "Z"))),
        ]
        assert classify_program(view) == ProgramClass.STRATIFIED


class TestFactsAndUpdates:
    def test_parse_fact(self, excluded_value):
        assert parse_fact("q(null)", excluded_value.schema) == f("q", None)
        with pytest.raises(InstanceSyntaxError):
            parse_fact("q(1, 2)", excluded_value.schema)

    def test_parse_update(self, two_requests):
        update = parse_update("+q(1)@d, +r(null)@d", two_requests.schema)
        assert update.inserted(ActionTarget.D) == {f("q", 1), f("r", None)}
        assert print_update(update) == "{+q(1)@d, +r(null)@d}"

    def test_update_targets_exceptions(self, two_requests):
        update = parse_update("-h(2)@e", two_requests.schema)
        assert update.deleted(ActionTarget.E) == {f("h", 2)}

    def test_update_rejects_derived_predicates(self, two_requests):
        with pytest.raises(InstanceSyntaxError) as info:
            parse_update("+t@d", two_requests.schema)
        assert info.value.diagnostics[0].error_code == "E012"

    def test_update_rejects_unknown_target(self, two_requests):
        with pytest.raises(InstanceSyntaxError):
            parse_update("+q(1)@x", two_requests.schema)

    def test_contradictory_update(self, two_requests):
        with pytest.raises(ContradictoryUpdateError):
            parse_update("+q(1)@d -q(1)@d", two_requests.schema)

    def test_null_constant(self):
        assert parse_fact("p(null)").args == (NULL,)
