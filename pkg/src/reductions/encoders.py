"""
Formula encoders producing deductive database instances.

Atoms of a formula become the symbols x1, x2, ... (y1, ... for universal
atoms), clauses c1, c2, ... and conjuncts d1, d2, ...; literal positions are
the numerals 1, 2 and 3 and polarities the symbols true and false.
"""

import logging
from itertools import product
from typing import Dict, List, Sequence

from src.core.schemas import NULL, Constant, Fact, IndefiniteDatabase, Schema
from src.reductions.schemas import CnfFormula, QbfFormula
from src.syntax.schemas import Atom, Comparison, ComparisonOp, Constraint, Instance, Request, Rule, Variable

logger = logging.getLogger(__name__)

TRUE = Constant.symbol("true")
FALSE = Constant.symbol("false")
POSITIONS = (Constant.numeral(1), Constant.numeral(2), Constant.numeral(3))

# base predicates of the 2QBF encoding whose extension the request freezes
FROZEN_PREDICATES = ("inX", "inX_c", "inY", "inY_c", "disj", "disj_c", "occur", "occur_c")


def _eq(var: str, value) -> Comparison:
    return Comparison(op=ComparisonOp.EQ, left=Variable(name=var), right=Constant.coerce(value))


def _var_eq(left: str, right: str) -> Comparison:
    return Comparison(op=ComparisonOp.EQ, left=Variable(name=left), right=Variable(name=right))


def polarity(lit: int) -> Constant:
    return TRUE if lit > 0 else FALSE


def clause_name(j: int) -> Constant:
    return Constant.symbol(f"c{j}")


def atom_name(var: int) -> Constant:
    return Constant.symbol(f"x{var}")


def occurrence_facts(clauses: Sequence[Sequence[int]], names, pred: str, label) -> List[Fact]:
    """pred(c, p, x, v) for the literal of clause c at position p"""
    facts = []
    for j, clause in enumerate(clauses, start=1):
        for position, lit in zip(POSITIONS, clause):
            facts.append(Fact.build(pred, (label(j), position, names(abs(lit)), polarity(lit))))
    return facts


def truth_value_constraints(pred: str) -> List[Constraint]:
    """pred(A,V) takes V in {true,false} and never both"""
    return [
        Constraint.universal(
            ante_pos=[Atom.of(pred, "A", "V")],
            cons_builtins=[_eq("V", TRUE), _eq("V", FALSE)],
        ),
        Constraint.universal(ante_pos=[Atom.of(pred, "A", TRUE), Atom.of(pred, "A", FALSE)]),
    ]


def encode_consistency(f: CnfFormula) -> Instance:
    """An instance without view or request that is consistent iff f is satisfiable"""
    f.check()
    d_set = [Fact.build("val", (atom_name(v), NULL)) for v in f.variables]
    d_set += [Fact.build("sat", (clause_name(j), NULL)) for j in range(1, len(f.clauses) + 1)]
    d_set += occurrence_facts(f.clauses, atom_name, "occur", clause_name)

    ics = truth_value_constraints("val")
    ics += [
        Constraint.universal(
            ante_pos=[Atom.of("sat", "C", "V")],
            cons_builtins=[_eq("V", TRUE), _eq("V", FALSE)],
        ),
        Constraint.universal(ante_pos=[Atom.of("sat", "C", TRUE), Atom.of("sat", "C", FALSE)]),
        Constraint.universal(
            ante_pos=[Atom.of("sat", "C", FALSE), Atom.of("occur", "C", "P", "A", "V"), Atom.of("val", "A", "V")],
        ),
        Constraint.universal(
            ante_pos=[
                Atom.of("sat", "C", TRUE),
                Atom.of("occur", "C", 1, "A", "V"),
                Atom.of("occur", "C", 2, "A'", "V'"),
                Atom.of("occur", "C", 3, "A''", "V''"),
            ],
            ante_neg=[Atom.of("val", "A", "V"), Atom.of("val", "A'", "V'"), Atom.of("val", "A''", "V''")],
        ),
        Constraint.universal(ante_pos=[Atom.of("sat", "C", FALSE)]),
    ]
    schema = Schema(base_preds={"val": 2, "sat": 2, "occur": 4})
    logger.debug("consistency encoding of %d clauses: %d facts", len(f.clauses), len(d_set))
    return Instance(schema_=schema, db=IndefiniteDatabase.of(d_set), ics=tuple(ics))


def encode_weak_repair(f: CnfFormula) -> Instance:
    """An empty instance whose request has a weak repair iff f is satisfiable

    The first constraint pins one literal to each clause position whatever its
    polarity, so a repair cannot satisfy a clause through an extra occurrence.
    """
    f.check()
    ics = [
        Constraint.universal(
            ante_pos=[Atom.of("occur", "C", "P", "A", "V"), Atom.of("occur", "C", "P", "A'", "V'")],
            cons_builtins=[_var_eq("A", "A'")],
        ),
        Constraint.universal(
            ante_pos=[Atom.of("occur", "C", "P", "A", "V")],
            cons_builtins=[_eq("P", 1), _eq("P", 2), _eq("P", 3)],
        ),
        Constraint.universal(
            ante_pos=[Atom.of("occur", "C", "P", "A", "V")],
            cons_builtins=[_eq("V", TRUE), _eq("V", FALSE)],
        ),
        Constraint.universal(
            ante_pos=[Atom.of("occur", "C", "P", "A", TRUE), Atom.of("occur", "C", "P", "A", FALSE)],
        ),
    ]
    ics += truth_value_constraints("val")
    view = (
        Rule(head=Atom.of("occur'", "C", "P", "W", "V"), body_pos=(Atom.of("occur", "C", "P", "W", "V"),)),
        Rule(
            head=Atom.of("sat", "C"),
            body_pos=(Atom.of("occur", "C", "P", "W", "V"), Atom.of("val", "W", "V")),
        ),
    )
    want_true = occurrence_facts(f.clauses, atom_name, "occur'", clause_name)
    want_true += [Fact.build("sat", (clause_name(j),)) for j in range(1, len(f.clauses) + 1)]
    schema = Schema(base_preds={"val": 2, "occur": 4}, derived_preds={"occur'": 4, "sat": 1})
    return Instance(schema_=schema, ics=tuple(ics), view=view, request=Request.of(want_true))


def qbf_domain(q: QbfFormula) -> List[Constant]:
    """Constants the request may mention: atoms, conjuncts, the three positions and both truth values"""
    domain = [Constant.symbol(q.name(v)) for v in q.x_vars + q.y_vars]
    domain += [conjunct_name(k) for k in range(1, len(q.dnf) + 1)]
    return domain + list(POSITIONS) + [TRUE, FALSE]


def conjunct_name(k: int) -> Constant:
    return Constant.symbol(f"d{k}")


def _frozen_extensions(q: QbfFormula) -> Dict[str, List[Fact]]:
    domain = qbf_domain(q)
    x_atoms = {Constant.symbol(q.name(v)) for v in q.x_vars}
    y_atoms = {Constant.symbol(q.name(v)) for v in q.y_vars}
    conjuncts = {conjunct_name(k) for k in range(1, len(q.dnf) + 1)}
    occur = occurrence_facts(q.dnf, lambda v: Constant.symbol(q.name(v)), "occur", conjunct_name)
    occur_args = {f.args for f in occur}
    return {
        "inX": [Fact.build("inX", (a,)) for a in sorted(x_atoms)],
        "inY": [Fact.build("inY", (a,)) for a in sorted(y_atoms)],
        "disj": [Fact.build("disj", (d,)) for d in sorted(conjuncts)],
        "occur": occur,
        "inX_c": [Fact.build("inX_c", (a,)) for a in domain if a not in x_atoms],
        "inY_c": [Fact.build("inY_c", (a,)) for a in domain if a not in y_atoms],
        "disj_c": [Fact.build("disj_c", (a,)) for a in domain if a not in conjuncts],
        "occur_c": [Fact.build("occur_c", args) for args in product(domain, repeat=4) if args not in occur_args],
    }


def encode_relevant_repair(q: QbfFormula) -> Instance:
    """An instance whose request has a relevant weak repair on D iff q is true

    Requesting assigned(true) and assigned(false) makes every relevant repair
    keep both values of a universal atom reachable in its worlds.
    """
    q.check()
    extensions = _frozen_extensions(q)
    d_set = [fact for pred in FROZEN_PREDICATES for fact in extensions[pred]]
    arity = {p: (4 if p.startswith("occur") else 1) for p in FROZEN_PREDICATES}

    ics = truth_value_constraints("val_X")
    ics += [
        Constraint.universal(ante_pos=[Atom.of("val_X", "A", "V")], cons_atoms=[Atom.of("inX", "A")]),
        Constraint.universal(ante_pos=[Atom.of("val_Y", "B", "V")], cons_atoms=[Atom.of("inY", "B")]),
    ]
    ics += [Constraint.universal(ante_pos=[Atom.of("val_Y", "B", c)]) for c in (TRUE, FALSE) + POSITIONS]
    ics += [
        Constraint.universal(ante_pos=[Atom.of(pred, "A"), Atom.of("val_Y", "B", "A")])
        for pred in ("inX", "inY", "disj")
    ]
    ics += [
        Constraint.universal(
            ante_pos=[Atom.of("val_Y", "B", "V"), Atom.of("val_Y", "B", "V'")],
            cons_builtins=[_var_eq("V", "V'")],
        ),
        Constraint.universal(
            ante_pos=[Atom.of("val_Y", "B", "V")],
            cons_atoms=[Atom.of("assign", "V", TRUE), Atom.of("assign", "V", FALSE)],
        ),
        Constraint.universal(
            ante_pos=[Atom.of("val_Y", "B", "V"), Atom.of("assign", "V", TRUE), Atom.of("assign", "V", FALSE)],
        ),
    ]
    # frozen predicates stay disjoint from their complements; assign keys are outside the formula's domain
    ics += [
        Constraint.universal(ante_pos=[Atom.of(pred, *args), Atom.of(f"{pred}_c", *args)])
        for pred, args in (("inX", ["A"]), ("inY", ["A"]), ("disj", ["A"]), ("occur", ["A", "P", "B", "V"]))
    ]
    ics += [Constraint.universal(ante_pos=[Atom.of("assign", c, "W")]) for c in (TRUE, FALSE) + POSITIONS]
    ics += [
        Constraint.universal(ante_pos=[Atom.of(pred, "A"), Atom.of("assign", "A", "W")])
        for pred in ("inX", "inY", "disj")
    ]

    view = []
    for pred in FROZEN_PREDICATES:
        args = ["W1"] if arity[pred] == 1 else ["W1", "W2", "W3", "W4"]
        view.append(Rule(head=Atom.of(f"{pred}'", *args), body_pos=(Atom.of(pred, *args),)))
    view += [
        Rule(head=Atom.of("val", "A"), body_pos=(Atom.of("inX", "A"), Atom.of("val_X", "A", "V"))),
        Rule(head=Atom.of("val", "A"), body_pos=(Atom.of("inY", "A"), Atom.of("val_Y", "A", "V"))),
        Rule(
            head=Atom.of("sat", "D", "P"),
            body_pos=(Atom.of("occur", "D", "P", "A", "V"), Atom.of("inX", "A"), Atom.of("val_X", "A", "V")),
        ),
        Rule(
            head=Atom.of("sat", "D", "P"),
            body_pos=(
                Atom.of("occur", "D", "P", "A", "V"),
                Atom.of("inY", "A"),
                Atom.of("val_Y", "A", "V'"),
                Atom.of("assign", "V'", "V"),
            ),
        ),
        Rule(
            head=Atom.of("satisfied"),
            body_pos=(Atom.of("sat", "D", 1), Atom.of("sat", "D", 2), Atom.of("sat", "D", 3)),
        ),
        Rule(head=Atom.of("assigned", "W"), body_pos=(Atom.of("assign", "V", "W"),)),
    ]

    want_true = [Fact.build(f"{fact.pred}'", fact.args) for fact in d_set]
    want_true += [Fact.build("val", (Constant.symbol(q.name(v)),)) for v in q.x_vars + q.y_vars]
    want_true += [Fact.build("assigned", (TRUE,)), Fact.build("assigned", (FALSE,)), Fact.build("satisfied", ())]

    base = {p: arity[p] for p in FROZEN_PREDICATES}
    base.update({"val_X": 2, "val_Y": 2, "assign": 2})
    derived = {f"{p}'": arity[p] for p in FROZEN_PREDICATES}
    derived.update({"val": 1, "sat": 2, "assigned": 1, "satisfied": 0})
    logger.debug("relevant-repair encoding over %d domain constants: %d facts", len(qbf_domain(q)), len(d_set))
    return Instance(
        schema_=Schema(base_preds=base, derived_preds=derived),
        db=IndefiniteDatabase.of(d_set),
        ics=tuple(ics),
        view=tuple(view),
        request=Request.of(want_true),
    )
