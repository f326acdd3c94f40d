from typing import List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from src.exceptions import FormulaShapeError

Clause = Tuple[int, int, int]


def _check_literals(literals: Clause, known: set, field: str):
    if len(literals) != 3:
        raise FormulaShapeError(f"Expected 3 literals, got {len(literals)}", field=field)
    for lit in literals:
        if lit == 0 or abs(lit) not in known:
            raise FormulaShapeError(f"Literal {lit} does not name a variable of the formula", field=field)


class CnfFormula(BaseModel):
    """A 3-CNF over variables 1..num_vars; literals are signed variable indices"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["cnf"] = "cnf"
    num_vars: int
    clauses: Tuple[Clause, ...] = ()

    @classmethod
    def of(cls, num_vars: int, clauses) -> "CnfFormula":
        formula = cls(num_vars=num_vars, clauses=tuple(tuple(c) for c in clauses))
        return formula.check()

    def check(self) -> "CnfFormula":
        if self.num_vars < 1:
            raise FormulaShapeError("A formula needs at least one variable", field="num_vars")
        known = set(range(1, self.num_vars + 1))
        for clause in self.clauses:
            _check_literals(clause, known, "clauses")
        return self

    @property
    def variables(self) -> List[int]:
        return list(range(1, self.num_vars + 1))

    def __str__(self) -> str:
        if not self.clauses:
            return "true"
        return " & ".join("(" + " | ".join(_literal(lit) for lit in c) + ")" for c in self.clauses)


class QbfFormula(BaseModel):
    """exists x_vars forall y_vars: a 3-DNF over both"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["qbf"] = "qbf"
    x_vars: Tuple[int, ...] = ()
    y_vars: Tuple[int, ...] = ()
    dnf: Tuple[Clause, ...] = ()

    @classmethod
    def of(cls, x_vars, y_vars, dnf) -> "QbfFormula":
        formula = cls(x_vars=tuple(x_vars), y_vars=tuple(y_vars), dnf=tuple(tuple(d) for d in dnf))
        return formula.check()

    def check(self) -> "QbfFormula":
        if any(v < 1 for v in self.x_vars + self.y_vars):
            raise FormulaShapeError("Variables are positive integers", field="x_vars")
        if len(set(self.x_vars)) != len(self.x_vars) or len(set(self.y_vars)) != len(self.y_vars):
            raise FormulaShapeError("A quantifier block lists a variable twice", field="x_vars")
        if set(self.x_vars) & set(self.y_vars):
            raise FormulaShapeError("Existential and universal variables must be disjoint", field="y_vars")
        known = set(self.x_vars) | set(self.y_vars)
        for conjunct in self.dnf:
            _check_literals(conjunct, known, "dnf")
        return self

    def name(self, var: int) -> str:
        return f"x{var}" if var in self.x_vars else f"y{var}"

    def __str__(self) -> str:
        def literal(lit: int) -> str:
            return self.name(lit) if lit > 0 else "~" + self.name(-lit)

        body = " | ".join("(" + " & ".join(literal(lit) for lit in d) + ")" for d in self.dnf) or "false"
        xs = ",".join(self.name(v) for v in self.x_vars)
        ys = ",".join(self.name(v) for v in self.y_vars)
        return f"exists {xs} forall {ys}: {body}"


def _literal(lit: int) -> str:
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


Formula = Union[CnfFormula, QbfFormula]


class FormulaFile(BaseModel):
    """JSON wrapper read and written by `gen --formula`"""
    formula: Formula = Field(discriminator="kind")
