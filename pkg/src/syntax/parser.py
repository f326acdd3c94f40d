import logging
from functools import lru_cache
from typing import List, Optional, Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.core.schemas import NULL, Constant, Fact, Schema
from src.exceptions import InstanceSyntaxError
from src.syntax.grammar import INSTANCE_GRAMMAR
from src.syntax.schemas import (
    Atom, Comparison, ComparisonOp, Constraint, Declaration, Diagnostic, Instance,
    InstanceDraft, Rule, Variable,
)
from src.syntax.validation import InstanceValidator

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(
        INSTANCE_GRAMMAR,
        parser="lalr",
        lexer="contextual",
        start=["start", "fact_only", "update_only"],
        propagate_positions=True,
    )


class InstanceTransformer(Transformer):
    """Builds an InstanceDraft from the parse tree, keeping source positions"""

    def __init__(self):
        super().__init__()
        self.diagnostics: List[Diagnostic] = []

    # terms

    def variable(self, children):
        return Variable(name=str(children[0]))

    def symbol(self, children):
        return Constant.symbol(str(children[0]))

    def numeral(self, children):
        token = children[0]
        value = int(token)
        if value < 1:
            self.diagnostics.append(Diagnostic(
                error_code="E001",
                error_message=f"Numerals are positive integers, got '{token}'",
                line=token.line,
                column=token.column,
            ))
            return Constant.symbol(str(token))
        return Constant.numeral(value)

    def null(self, children):
        return NULL

    def atom(self, children):
        return Atom(pred=str(children[0]), args=tuple(children[1:]))

    @v_args(meta=True)
    def ground_atom(self, meta, children):
        return Atom(pred=str(children[0]), args=tuple(children[1:])), (meta.line, meta.column)

    def negated(self, children):
        return ("not", children[0])

    def comparison(self, children):
        return Comparison(op=ComparisonOp(str(children[1])), left=children[0], right=children[2])

    # declarations and fact blocks

    @v_args(meta=True)
    def pred_decl(self, meta, children):
        return Declaration(name=str(children[0]), arity=int(children[1]), line=meta.line, column=meta.column)

    def base_decl(self, children):
        return ("base", children)

    def derived_decl(self, children):
        return ("derived", [d.model_copy(update={"derived": True}) for d in children])

    def db_block(self, children):
        return ("db", children)

    def except_block(self, children):
        return ("except", children)

    # constraints

    def var_list(self, children):
        return [str(t) for t in children]

    def exists_part(self, children):
        return ("exists", children[0])

    def forall_part(self, children):
        return ("forall", children[0])

    def prefix(self, children):
        parts = dict(children)
        return tuple(parts.get("exists", [])), tuple(parts.get("forall", []))

    def antecedent(self, children):
        return list(children)

    def consequent(self, children):
        return list(children)

    def falsity(self, children):
        return []

    @v_args(meta=True)
    def constraint(self, meta, children):
        prefix = children[0] if len(children) == 3 else None
        antecedent, consequent = children[-2], children[-1]
        fields = dict(
            ante_pos=tuple(x for x in antecedent if isinstance(x, Atom)),
            ante_neg=tuple(x[1] for x in antecedent if isinstance(x, tuple)),
            ante_builtins=tuple(x for x in antecedent if isinstance(x, Comparison)),
            cons_atoms=tuple(x for x in consequent if isinstance(x, Atom)),
            cons_builtins=tuple(x for x in consequent if isinstance(x, Comparison)),
        )
        if prefix is None:
            constraint = Constraint.universal(**fields)
        else:
            constraint = Constraint(exist_vars=prefix[0], univ_vars=prefix[1], **fields)
        return constraint, (meta.line, meta.column)

    def ic_block(self, children):
        return ("ic", children)

    # views

    @v_args(meta=True)
    def rule(self, meta, children):
        head, body = children[0], children[1:]
        if any(isinstance(x, Comparison) for x in body):
            self.diagnostics.append(Diagnostic(
                error_code="E014",
                error_message=f"Built-in comparisons are not allowed in view rules (rule for '{head.pred}')",
                line=meta.line,
                column=meta.column,
                field="view",
            ))
        rule = Rule(
            head=head,
            body_pos=tuple(x for x in body if isinstance(x, Atom)),
            body_neg=tuple(x[1] for x in body if isinstance(x, tuple)),
        )
        return rule, (meta.line, meta.column)

    def view_block(self, children):
        return ("view", children)

    # requests

    def request_part(self, children):
        return str(children[0]), children[1:]

    def request_block(self, children):
        return ("request", children)

    def start(self, children) -> InstanceDraft:
        draft = InstanceDraft()
        for kind, items in children:
            if kind in ("base", "derived"):
                for d in items:
                    draft.positions[f"decl.{len(draft.declarations)}"] = (d.line, d.column)
                    draft.declarations.append(d)
            elif kind in ("db", "except"):
                target = draft.db_facts if kind == "db" else draft.except_facts
                for atom, position in items:
                    draft.positions[f"{kind}.{len(target)}"] = position
                    target.append(atom)
            elif kind == "ic":
                for constraint, position in items:
                    draft.positions[f"ic.{len(draft.ics)}"] = position
                    draft.ics.append(constraint)
            elif kind == "view":
                for rule, position in items:
                    draft.positions[f"view.{len(draft.view)}"] = position
                    draft.view.append(rule)
            elif kind == "request":
                draft.has_request = True
                for polarity, atoms in items:
                    key = "request_true" if polarity == "true" else "request_false"
                    target = draft.request_true if polarity == "true" else draft.request_false
                    for atom, position in atoms:
                        draft.positions[f"{key}.{len(target)}"] = position
                        target.append(atom)
        return draft

    # single facts and update lists

    def fact_only(self, children):
        return children[0]

    @v_args(meta=True)
    def action(self, meta, children):
        sign, (atom, _), target = children
        return str(sign), atom, str(target), (meta.line, meta.column)

    def update_only(self, children):
        return list(children)


def _syntax_diagnostic(error: UnexpectedInput) -> Diagnostic:
    line = getattr(error, "line", None)
    column = getattr(error, "column", None)
    if line is not None and line < 0:
        line, column = None, None
    if isinstance(error, UnexpectedCharacters):
        return Diagnostic(
            error_code="E001",
            error_message=f"Unexpected character '{error.char}'",
            line=line,
            column=column,
        )
    if isinstance(error, UnexpectedToken):
        expected = ", ".join(sorted(error.expected)) if error.expected else "nothing"
        if error.token.type == "$END":
            message = f"Unexpected end of input, expected one of: {expected}"
        else:
            message = f"Unexpected token '{error.token}', expected one of: {expected}"
        return Diagnostic(error_code="E002", error_message=message, line=line, column=column)
    if isinstance(error, UnexpectedEOF):
        return Diagnostic(error_code="E002", error_message="Unexpected end of input", line=line, column=column)
    return Diagnostic(error_code="E002", error_message=str(error).strip().splitlines()[0], line=line, column=column)


def _parse(text: str, start: str) -> Tuple[object, List[Diagnostic]]:
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as error:
        return None, [_syntax_diagnostic(error)]
    transformer = InstanceTransformer()
    result = transformer.transform(tree)
    return result, transformer.diagnostics


def try_parse_instance(text: str) -> Tuple[Optional[Instance], List[Diagnostic]]:
    """Parse and validate an instance; returns the instance or the diagnostics"""
    draft, diagnostics = _parse(text, "start")
    if draft is None:
        return None, diagnostics
    diagnostics = diagnostics + InstanceValidator().validate(draft)
    if diagnostics:
        diagnostics.sort(key=lambda d: (d.line or 0, d.column or 0, d.error_code))
        logger.debug("instance rejected with %d diagnostic(s)", len(diagnostics))
        return None, diagnostics
    instance = draft.to_instance()
    logger.debug(
        "parsed instance: %d facts, %d exceptions, %d constraints, %d rules",
        len(instance.db.d_set), len(instance.db.e_set), len(instance.ics), len(instance.view),
    )
    return instance, []


def parse_instance(text: str) -> Instance:
    instance, diagnostics = try_parse_instance(text)
    if instance is None:
        raise InstanceSyntaxError(diagnostics)
    return instance


def parse_fact(text: str, schema: Optional[Schema] = None) -> Fact:
    """Parse one ground atom such as `q(1,null)`, checked against schema when given"""
    parsed, diagnostics = _parse(text, "fact_only")
    if parsed is None or diagnostics:
        raise InstanceSyntaxError(diagnostics)
    atom, (line, column) = parsed
    if schema is not None:
        diagnostics = InstanceValidator().validate_atom(atom, schema, line=line, column=column, field="fact")
        if diagnostics:
            raise InstanceSyntaxError(diagnostics)
    return atom.to_fact()


def parse_update(text: str, schema: Optional[Schema] = None) -> "Update":  # noqa: F821
    """Parse update literals such as `+q(a,b)@d, -p(1)@e`"""
    from src.updates.schemas import ActionSign, ActionTarget, Update, UpdateAction

    parsed, diagnostics = _parse(text, "update_only")
    if parsed is None or diagnostics:
        raise InstanceSyntaxError(diagnostics)
    validator = InstanceValidator()
    actions = []
    for sign, atom, target, (line, column) in parsed:
        if target not in ("d", "e"):
            diagnostics.append(Diagnostic(
                error_code="E002",
                error_message=f"Update target must be 'd' or 'e', got '{target}'",
                line=line,
                column=column,
                field="update",
            ))
            continue
        if schema is not None:
            problems = validator.validate_atom(atom, schema, line=line, column=column, field="update", base_only=True)
            if problems:
                diagnostics.extend(problems)
                continue
        actions.append(UpdateAction(
            sign=ActionSign.INSERT if sign == "+" else ActionSign.DELETE,
            target=ActionTarget(target),
            fact=atom.to_fact(),
        ))
    if diagnostics:
        raise InstanceSyntaxError(diagnostics)
    return Update.of(actions)
