from typing import Dict, List, Optional, Union

from src.core.schemas import Constant, Schema
from src.syntax.schemas import (
    Atom, Comparison, ComparisonOp, Constraint, Diagnostic, Instance, InstanceDraft, Rule,
)


class InstanceValidator:
    """Collects every problem of an instance instead of stopping at the first one"""

    def __init__(self):
        self.errors: List[Diagnostic] = []
        self.base: Dict[str, int] = {}
        self.derived: Dict[str, int] = {}

    def validate(self, instance: Union[Instance, InstanceDraft]) -> List[Diagnostic]:
        """Validate a parsed draft or an already built instance"""
        draft = instance if isinstance(instance, InstanceDraft) else InstanceDraft.from_instance(instance)
        self.errors = []
        self._collect_declarations(draft)

        for i, atom in enumerate(draft.db_facts):
            self._check_fact(atom, draft, f"db.{i}", "db")
        for i, atom in enumerate(draft.except_facts):
            self._check_fact(atom, draft, f"except.{i}", "except")
        for i, constraint in enumerate(draft.ics):
            self._check_constraint(constraint, draft, f"ic.{i}")
        for i, rule in enumerate(draft.view):
            self._check_rule(rule, draft, f"view.{i}")
        self._check_request(draft)
        return self.errors

    def validate_atom(
        self,
        atom: Atom,
        schema: Schema,
        line: Optional[int] = None,
        column: Optional[int] = None,
        field: Optional[str] = None,
        base_only: bool = False,
    ) -> List[Diagnostic]:
        """Check a single atom against a schema"""
        self.errors = []
        self.base = dict(schema.base_preds)
        self.derived = dict(schema.derived_preds)
        if self._check_declared(atom, line, column, field) and base_only and atom.pred in self.derived:
            self._error(
                "E012", f"Derived predicate '{atom.pred}' cannot be updated", line, column, field,
            )
        return self.errors

    def _error(self, code: str, message: str, line=None, column=None, field=None):
        self.errors.append(Diagnostic(error_code=code, error_message=message, line=line, column=column, field=field))

    def _collect_declarations(self, draft: InstanceDraft):
        self.base, self.derived = {}, {}
        for i, decl in enumerate(draft.declarations):
            line, column = draft.position(f"decl.{i}")
            own, other = (self.derived, self.base) if decl.derived else (self.base, self.derived)
            if decl.name in other:
                self._error(
                    "E010",
                    f"Predicate '{decl.name}' is declared both base and derived",
                    line, column, "declarations",
                )
            elif decl.name in own and own[decl.name] != decl.arity:
                self._error(
                    "E010",
                    f"Predicate '{decl.name}' is declared with arities {own[decl.name]} and {decl.arity}",
                    line, column, "declarations",
                )
            else:
                own[decl.name] = decl.arity

    def _check_declared(self, atom: Atom, line, column, field) -> bool:
        expected = self.base.get(atom.pred, self.derived.get(atom.pred))
        if expected is None:
            self._error("E004", f"Predicate '{atom.pred}' is not declared", line, column, field)
            return False
        if expected != atom.arity:
            self._error(
                "E003",
                f"Predicate '{atom.pred}' has arity {expected}, used with {atom.arity} arguments",
                line, column, field,
            )
            return False
        return True

    def _check_fact(self, atom: Atom, draft: InstanceDraft, key: str, field: str):
        line, column = draft.position(key)
        if not atom.is_ground:
            self._error("E002", f"Fact {atom} contains variables", line, column, field)
            return
        if self._check_declared(atom, line, column, field) and atom.pred in self.derived:
            self._error(
                "E012", f"Derived predicate '{atom.pred}' cannot appear in the database", line, column, field,
            )

    def _check_constraint(self, constraint: Constraint, draft: InstanceDraft, key: str):
        line, column = draft.position(key)
        for atom in constraint.atoms:
            if self._check_declared(atom, line, column, "ic") and atom.pred in self.derived:
                self._error(
                    "E012", f"Derived predicate '{atom.pred}' cannot appear in a constraint", line, column, "ic",
                )
        if any(c.is_null for c in constraint.constants):
            self._error("E007", "Constraints cannot mention null", line, column, "ic")
        for builtin in constraint.builtins:
            self._check_builtin(builtin, line, column)

        safe = {v for atom in constraint.ante_pos if atom.pred in self.base for v in atom.variables}
        for var in constraint.variables:
            if var not in safe:
                self._error(
                    "E011",
                    f"Variable {var} does not occur in a positive base atom of the antecedent",
                    line, column, "ic",
                )
        quantified = set(constraint.exist_vars) | set(constraint.univ_vars)
        for var in sorted(set(constraint.exist_vars) & set(constraint.univ_vars)):
            self._error("E011", f"Variable {var} is quantified twice", line, column, "ic")
        for var in constraint.variables:
            if var not in quantified:
                self._error("E011", f"Variable {var} is not quantified", line, column, "ic")
        for var in list(constraint.exist_vars) + list(constraint.univ_vars):
            if var not in constraint.variables:
                self._error("E011", f"Quantified variable {var} does not occur in the constraint", line, column, "ic")

    def _check_builtin(self, builtin: Comparison, line, column):
        if builtin.op != ComparisonOp.LE:
            return
        for term in (builtin.left, builtin.right):
            if isinstance(term, Constant) and term.is_symbol:
                self._error("E008", f"'<=' applied to symbol '{term}' in {builtin}", line, column, "ic")

    def _check_rule(self, rule: Rule, draft: InstanceDraft, key: str):
        line, column = draft.position(key)
        if self._check_declared(rule.head, line, column, "view") and rule.head.pred in self.base:
            self._error(
                "E009", f"Base predicate '{rule.head.pred}' cannot be a rule head", line, column, "view",
            )
        for atom in rule.body_pos + rule.body_neg:
            self._check_declared(atom, line, column, "view")
        if any(c.is_null for atom in (rule.head,) + rule.body_pos + rule.body_neg for c in atom.constants):
            self._error("E006", f"Rule for '{rule.head.pred}' mentions null", line, column, "view")

        positive = {v for atom in rule.body_pos for v in atom.variables}
        unsafe = [v for v in rule.variables if v not in positive]
        if unsafe:
            self._error(
                "E005",
                f"Rule for '{rule.head.pred}' is unsafe: {', '.join(unsafe)} not bound by a positive body atom",
                line, column, "view",
            )

    def _check_request(self, draft: InstanceDraft):
        for key, atoms in (("request_true", draft.request_true), ("request_false", draft.request_false)):
            for i, atom in enumerate(atoms):
                line, column = draft.position(f"{key}.{i}")
                self._check_declared(atom, line, column, "request")
        both = {str(a) for a in draft.request_true} & {str(a) for a in draft.request_false}
        for i, atom in enumerate(draft.request_false):
            if str(atom) in both:
                line, column = draft.position(f"request_false.{i}")
                self._error(
                    "E013", f"Fact {atom} is requested both true and false", line, column, "request",
                )
