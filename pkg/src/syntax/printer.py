from typing import Iterable, List

from src.core.schemas import Fact
from src.syntax.schemas import Atom, Constraint, Instance, Rule


def print_fact(fact: Fact) -> str:
    return str(fact)


def print_atom(atom: Atom) -> str:
    return str(atom)


def print_rule(rule: Rule) -> str:
    body = [print_atom(a) for a in rule.body_pos] + [f"not {print_atom(a)}" for a in rule.body_neg]
    if not body:
        return f"{print_atom(rule.head)}."
    return f"{print_atom(rule.head)} :- {', '.join(body)}."


def print_constraint(constraint: Constraint) -> str:
    """Render a constraint; the quantifier prefix is omitted when it is the implicit one"""
    prefix = ""
    implicit = not constraint.exist_vars and list(constraint.univ_vars) == constraint.variables
    if not implicit:
        parts = []
        if constraint.exist_vars:
            parts.append("exists " + ",".join(constraint.exist_vars))
        if constraint.univ_vars:
            parts.append("forall " + ",".join(constraint.univ_vars))
        prefix = " ".join(parts) + " : "
    antecedent = (
        [print_atom(a) for a in constraint.ante_pos]
        + [f"not {print_atom(a)}" for a in constraint.ante_neg]
        + [str(b) for b in constraint.ante_builtins]
    )
    if constraint.is_denial:
        consequent = "false"
    else:
        consequent = " | ".join([print_atom(a) for a in constraint.cons_atoms] + [str(b) for b in constraint.cons_builtins])
    if antecedent:
        return f"{prefix}{', '.join(antecedent)} -> {consequent}."
    return f"{prefix}-> {consequent}."


def _block(name: str, lines: Iterable[str]) -> List[str]:
    lines = list(lines)
    if not lines:
        return [f"{name} {{", "}"]
    return [f"{name} {{"] + [f"  {line}" for line in lines] + ["}"]


def print_instance(instance: Instance) -> str:
    """Canonical text of an instance: fixed section order, facts sorted"""
    out: List[str] = []
    schema = instance.schema
    if schema.base_preds:
        out.append("base " + ", ".join(f"{p}/{a}" for p, a in sorted(schema.base_preds.items())) + ".")
    if schema.derived_preds:
        out.append("derived " + ", ".join(f"{p}/{a}" for p, a in sorted(schema.derived_preds.items())) + ".")
    out += _block("db", (f"{print_fact(f)}." for f in sorted(instance.db.d_set)))
    out += _block("except", (f"{print_fact(f)}." for f in sorted(instance.db.e_set)))
    out += _block("ic", (print_constraint(c) for c in instance.ics))
    out += _block("view", (print_rule(r) for r in instance.view))
    if instance.request is not None:
        parts = []
        if instance.request.want_true:
            parts.append("true: " + ", ".join(print_fact(f) for f in sorted(instance.request.want_true)) + ";")
        if instance.request.want_false:
            parts.append("false: " + ", ".join(print_fact(f) for f in sorted(instance.request.want_false)) + ";")
        out += _block("request", parts)
    return "\n".join(out) + "\n"


def print_action(action) -> str:
    """`+q(a,b)@d` style literal of an update action"""
    return f"{action.sign.symbol}{print_fact(action.fact)}@{action.target.value}"


def print_update(update) -> str:
    return "{" + ", ".join(print_action(a) for a in update.actions) + "}"
