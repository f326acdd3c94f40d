from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Set, Tuple, Union

from pydantic import BaseModel, ConfigDict

from src.core.index import Pattern
from src.core.schemas import Constant, Fact, IndefiniteDatabase, Schema


class Variable(BaseModel):
    """A capitalized rule or constraint variable"""
    model_config = ConfigDict(frozen=True)

    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Variable, Constant]


class Atom(BaseModel):
    """An atom whose arguments may be variables"""
    model_config = ConfigDict(frozen=True)

    pred: str
    args: Tuple[Term, ...] = ()

    @classmethod
    def of(cls, pred: str, *args: Union[Term, int, str, None]) -> "Atom":
        """Capitalized strings become variables, everything else a constant"""
        terms = []
        for a in args:
            if isinstance(a, (Variable, Constant)):
                terms.append(a)
            elif isinstance(a, str) and a[:1].isupper():
                terms.append(Variable(name=a))
            else:
                terms.append(Constant.coerce(a))
        return cls(pred=pred, args=tuple(terms))

    @classmethod
    def from_fact(cls, fact: Fact) -> "Atom":
        return cls(pred=fact.pred, args=fact.args)

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def variables(self) -> List[str]:
        """Variable names in order of first occurrence"""
        seen: Dict[str, None] = {}
        for a in self.args:
            if isinstance(a, Variable):
                seen.setdefault(a.name, None)
        return list(seen)

    @property
    def is_ground(self) -> bool:
        return not any(isinstance(a, Variable) for a in self.args)

    @property
    def constants(self) -> Set[Constant]:
        return {a for a in self.args if isinstance(a, Constant)}

    @property
    def pattern(self) -> Pattern:
        return (self.pred, tuple(a.name if isinstance(a, Variable) else a for a in self.args))

    def to_fact(self) -> Fact:
        if not self.is_ground:
            raise ValueError(f"atom {self} is not ground")
        return Fact.build(self.pred, tuple(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


class ComparisonOp(str, Enum):
    """Built-in relations usable in integrity constraints"""
    EQ = "="
    LE = "<="


class Comparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    op: ComparisonOp
    left: Term
    right: Term

    @property
    def variables(self) -> List[str]:
        return [t.name for t in (self.left, self.right) if isinstance(t, Variable)]

    @property
    def constants(self) -> Set[Constant]:
        return {t for t in (self.left, self.right) if isinstance(t, Constant)}

    def __str__(self) -> str:
        return f"{self.left} {self.op.value} {self.right}"


class Rule(BaseModel):
    """A view rule head :- body_pos, not body_neg"""
    model_config = ConfigDict(frozen=True)

    head: Atom
    body_pos: Tuple[Atom, ...] = ()
    body_neg: Tuple[Atom, ...] = ()

    @property
    def variables(self) -> List[str]:
        seen: Dict[str, None] = {}
        for atom in (self.head,) + self.body_pos + self.body_neg:
            for v in atom.variables:
                seen.setdefault(v, None)
        return list(seen)

    @property
    def is_horn(self) -> bool:
        return not self.body_neg


class Constraint(BaseModel):
    """exists X forall Y : ante_pos, not ante_neg, builtins -> B1 | ... | Bm

    An empty consequent is the falsity marker.
    """
    model_config = ConfigDict(frozen=True)

    exist_vars: Tuple[str, ...] = ()
    univ_vars: Tuple[str, ...] = ()
    ante_pos: Tuple[Atom, ...] = ()
    ante_neg: Tuple[Atom, ...] = ()
    ante_builtins: Tuple[Comparison, ...] = ()
    cons_atoms: Tuple[Atom, ...] = ()
    cons_builtins: Tuple[Comparison, ...] = ()

    @property
    def is_denial(self) -> bool:
        return not self.cons_atoms and not self.cons_builtins

    @property
    def is_universal(self) -> bool:
        return not self.exist_vars

    @property
    def atoms(self) -> Tuple[Atom, ...]:
        return self.ante_pos + self.ante_neg + self.cons_atoms

    @property
    def builtins(self) -> Tuple[Comparison, ...]:
        return self.ante_builtins + self.cons_builtins

    @property
    def variables(self) -> List[str]:
        """Variables in order of first occurrence"""
        seen: Dict[str, None] = {}
        for atom in self.ante_pos + self.ante_neg:
            for v in atom.variables:
                seen.setdefault(v, None)
        for b in self.ante_builtins:
            for v in b.variables:
                seen.setdefault(v, None)
        for atom in self.cons_atoms:
            for v in atom.variables:
                seen.setdefault(v, None)
        for b in self.cons_builtins:
            for v in b.variables:
                seen.setdefault(v, None)
        return list(seen)

    @property
    def constants(self) -> Set[Constant]:
        found: Set[Constant] = set()
        for atom in self.atoms:
            found |= atom.constants
        for b in self.builtins:
            found |= b.constants
        return found

    @classmethod
    def universal(cls, ante_pos=(), cons_atoms=(), ante_neg=(), ante_builtins=(), cons_builtins=()) -> "Constraint":
        """A constraint whose variables are all implicitly universal"""
        draft = cls(
            ante_pos=tuple(ante_pos), ante_neg=tuple(ante_neg), ante_builtins=tuple(ante_builtins),
            cons_atoms=tuple(cons_atoms), cons_builtins=tuple(cons_builtins),
        )
        return draft.model_copy(update={"univ_vars": tuple(draft.variables)})


class Request(BaseModel):
    """Facts requested true and false after the update"""
    model_config = ConfigDict(frozen=True)

    want_true: FrozenSet[Fact] = frozenset()
    want_false: FrozenSet[Fact] = frozenset()

    @classmethod
    def of(cls, want_true=(), want_false=()) -> "Request":
        return cls(want_true=frozenset(want_true), want_false=frozenset(want_false))

    @property
    def facts(self) -> FrozenSet[Fact]:
        return self.want_true | self.want_false

    @property
    def is_empty(self) -> bool:
        return not self.want_true and not self.want_false


class Instance(BaseModel):
    """A deductive database with constraints and a view, together with an optional request"""
    model_config = ConfigDict(frozen=True)

    schema_: Schema = Schema()
    db: IndefiniteDatabase = IndefiniteDatabase()
    ics: Tuple[Constraint, ...] = ()
    view: Tuple[Rule, ...] = ()
    request: Optional[Request] = None

    @property
    def schema(self) -> Schema:
        return self.schema_

    def with_db(self, db: IndefiniteDatabase) -> "Instance":
        return self.model_copy(update={"db": db})

    def with_request(self, request: Optional[Request]) -> "Instance":
        return self.model_copy(update={"request": request})

    def program_constants(self) -> Set[Constant]:
        """Definite constants of the constraints and the view"""
        found: Set[Constant] = set()
        for c in self.ics:
            found |= c.constants
        for r in self.view:
            for atom in (r.head,) + r.body_pos + r.body_neg:
                found |= atom.constants
        return {c for c in found if not c.is_null}

    def constants(self, include_request: bool = True) -> Set[Constant]:
        """Definite constants of D, E, the constraints, the view and (optionally) the request"""
        found = set(self.program_constants())
        for f in self.db.facts:
            found |= f.constants
        if include_request and self.request is not None:
            for f in self.request.facts:
                found |= f.constants
        return found

    def predicates(self, include_request: bool = True) -> Set[str]:
        """Predicates occurring in D, E, the constraints, the view and (optionally) the request"""
        found = {f.pred for f in self.db.facts}
        for c in self.ics:
            found |= {a.pred for a in c.atoms}
        for r in self.view:
            found |= {a.pred for a in (r.head,) + r.body_pos + r.body_neg}
        if include_request and self.request is not None:
            found |= {f.pred for f in self.request.facts}
        return found

    @property
    def has_builtin_le(self) -> bool:
        return any(b.op == ComparisonOp.LE for c in self.ics for b in c.builtins)

    @property
    def existential_count(self) -> int:
        return sum(len(c.exist_vars) for c in self.ics)


class Diagnostic(BaseModel):
    """A positioned validation or parse problem"""
    error_code: str
    error_message: str
    line: Optional[int] = None
    column: Optional[int] = None
    field: Optional[str] = None

    def render(self, source: str = "<input>") -> str:
        line = self.line if self.line is not None else 0
        column = self.column if self.column is not None else 0
        return f"{source}:{line}:{column}: {self.error_code}: {self.error_message}"


class ProgramClass(str, Enum):
    """Shape of a view program, from most to least restrictive"""
    EMPTY = "empty"
    ACYCLIC_HORN = "acyclic_horn"
    ACYCLIC = "acyclic"
    STRATIFIED = "stratified"
    GENERAL = "general"


class DependencyEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    negative: bool = False


class DependencyReport(BaseModel):
    """Predicate dependency graph summary of a view"""
    acyclic: bool
    program_class: ProgramClass
    edges: List[DependencyEdge] = []
    components: List[List[str]] = []
    cyclic_components: List[List[str]] = []


class Declaration(BaseModel):
    name: str
    arity: int
    derived: bool = False
    line: Optional[int] = None
    column: Optional[int] = None


Position = Tuple[Optional[int], Optional[int]]


class InstanceDraft(BaseModel):
    """Unvalidated instance parts in source order, with positions

    Keys of `positions` are `<section>.<index>` such as `db.0` or `view.2`.
    """
    declarations: List[Declaration] = []
    db_facts: List[Atom] = []
    except_facts: List[Atom] = []
    ics: List[Constraint] = []
    view: List[Rule] = []
    request_true: List[Atom] = []
    request_false: List[Atom] = []
    has_request: bool = False
    positions: Dict[str, Position] = {}

    def position(self, key: str) -> Position:
        return self.positions.get(key, (None, None))

    @classmethod
    def from_instance(cls, instance: Instance) -> "InstanceDraft":
        declarations = [Declaration(name=p, arity=a) for p, a in sorted(instance.schema.base_preds.items())]
        declarations += [
            Declaration(name=p, arity=a, derived=True) for p, a in sorted(instance.schema.derived_preds.items())
        ]
        request = instance.request
        return cls(
            declarations=declarations,
            db_facts=[Atom.from_fact(f) for f in sorted(instance.db.d_set)],
            except_facts=[Atom.from_fact(f) for f in sorted(instance.db.e_set)],
            ics=list(instance.ics),
            view=list(instance.view),
            request_true=[Atom.from_fact(f) for f in sorted(request.want_true)] if request else [],
            request_false=[Atom.from_fact(f) for f in sorted(request.want_false)] if request else [],
            has_request=request is not None,
        )

    def to_instance(self) -> Instance:
        schema = Schema(
            base_preds={d.name: d.arity for d in self.declarations if not d.derived},
            derived_preds={d.name: d.arity for d in self.declarations if d.derived},
        )
        db = IndefiniteDatabase.of(
            (a.to_fact() for a in self.db_facts), (a.to_fact() for a in self.except_facts)
        )
        request = None
        if self.has_request:
            request = Request.of(
                (a.to_fact() for a in self.request_true), (a.to_fact() for a in self.request_false)
            )
        return Instance(schema_=schema, db=db, ics=tuple(self.ics), view=tuple(self.view), request=request)
