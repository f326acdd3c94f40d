from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, model_validator

from src.exceptions import ArityMismatchError, UnknownPredicateError


class ConstantKind(str, Enum):
    """Constant kind enumeration"""
    NULL = "null"
    NUMERAL = "numeral"
    SYMBOL = "symbol"


class Constant(BaseModel):
    """A domain element: the null value, a positive numeral or a symbol"""
    model_config = ConfigDict(frozen=True)

    kind: ConstantKind
    value: Union[int, str, None] = None

    @model_validator(mode="after")
    def check_payload(self):
        if self.kind == ConstantKind.NULL and self.value is not None:
            raise ValueError("null carries no payload")
        if self.kind == ConstantKind.NUMERAL:
            if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value < 1:
                raise ValueError("numerals are positive integers")
        if self.kind == ConstantKind.SYMBOL and (not isinstance(self.value, str) or not self.value):
            raise ValueError("symbols need a nonempty name")
        return self

    @classmethod
    def null(cls) -> "Constant":
        return _constant(ConstantKind.NULL, None)

    @classmethod
    def numeral(cls, value: int) -> "Constant":
        return _constant(ConstantKind.NUMERAL, value)

    @classmethod
    def symbol(cls, name: str) -> "Constant":
        return _constant(ConstantKind.SYMBOL, name)

    @classmethod
    def coerce(cls, value: Union["Constant", int, str, None]) -> "Constant":
        """Accept python shorthands: None/'null' for ⊥, ints for numerals, strings for symbols"""
        if isinstance(value, Constant):
            return value
        if value is None or value == "null":
            return cls.null()
        if isinstance(value, int):
            return cls.numeral(value)
        return cls.symbol(value)

    @property
    def is_null(self) -> bool:
        return self.kind == ConstantKind.NULL

    @property
    def is_numeral(self) -> bool:
        return self.kind == ConstantKind.NUMERAL

    @property
    def is_symbol(self) -> bool:
        return self.kind == ConstantKind.SYMBOL

    @property
    def sort_key(self) -> Tuple[int, int, str]:
        if self.kind == ConstantKind.NULL:
            return (0, 0, "")
        if self.kind == ConstantKind.NUMERAL:
            return (1, self.value, "")
        return (2, 0, self.value)

    def __lt__(self, other: "Constant") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.kind == ConstantKind.NULL:
            return "null"
        return str(self.value)

    def __repr__(self) -> str:
        return f"Constant({self})"


@lru_cache(maxsize=None)
def _constant(kind: ConstantKind, value: Union[int, str, None]) -> Constant:
    return Constant(kind=kind, value=value)


NULL = Constant.null()


class Fact(BaseModel):
    """A ground atom; definite when no argument is null"""
    model_config = ConfigDict(frozen=True)

    pred: str
    args: Tuple[Constant, ...] = ()

    @classmethod
    def of(cls, pred: str, *args: Union[Constant, int, str, None]) -> "Fact":
        return cls(pred=pred, args=tuple(Constant.coerce(a) for a in args))

    @classmethod
    def build(cls, pred: str, args: Tuple[Constant, ...]) -> "Fact":
        """Construct without validation; for already validated arguments"""
        return cls.model_construct(pred=pred, args=args)

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_definite(self) -> bool:
        return not any(a.is_null for a in self.args)

    @property
    def constants(self) -> FrozenSet[Constant]:
        return frozenset(a for a in self.args if not a.is_null)

    @property
    def null_count(self) -> int:
        return sum(1 for a in self.args if a.is_null)

    @property
    def sort_key(self) -> Tuple:
        return (self.pred, tuple(a.sort_key for a in self.args))

    def __lt__(self, other: "Fact") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(a) for a in self.args)})"

    def __repr__(self) -> str:
        return f"Fact({self})"


class Schema(BaseModel):
    """Declared base and derived predicates with their arities"""
    model_config = ConfigDict(frozen=True)

    base_preds: Dict[str, int] = {}
    derived_preds: Dict[str, int] = {}

    @model_validator(mode="after")
    def check_disjoint(self):
        overlap = set(self.base_preds) & set(self.derived_preds)
        if overlap:
            raise ValueError(f"predicates declared both base and derived: {sorted(overlap)}")
        if any(a < 0 for a in list(self.base_preds.values()) + list(self.derived_preds.values())):
            raise ValueError("arities must be non-negative")
        return self

    def is_base(self, pred: str) -> bool:
        return pred in self.base_preds

    def is_derived(self, pred: str) -> bool:
        return pred in self.derived_preds

    def arity(self, pred: str) -> Optional[int]:
        if pred in self.base_preds:
            return self.base_preds[pred]
        return self.derived_preds.get(pred)

    def check_fact(self, fact: Fact, base_only: bool = False) -> None:
        """Raise if the fact's predicate is undeclared or has the wrong arity"""
        expected = self.base_preds.get(fact.pred) if base_only else self.arity(fact.pred)
        if expected is None:
            raise UnknownPredicateError(fact.pred)
        if expected != fact.arity:
            raise ArityMismatchError(fact.pred, expected, fact.arity)

    def merged(self, other: "Schema") -> "Schema":
        return Schema(
            base_preds={**self.base_preds, **other.base_preds},
            derived_preds={**self.derived_preds, **other.derived_preds},
        )


class IndefiniteDatabase(BaseModel):
    """True facts D and exception facts E"""
    model_config = ConfigDict(frozen=True)

    d_set: FrozenSet[Fact] = frozenset()
    e_set: FrozenSet[Fact] = frozenset()

    @classmethod
    def of(cls, d_set: Iterable[Fact] = (), e_set: Iterable[Fact] = ()) -> "IndefiniteDatabase":
        return cls(d_set=frozenset(d_set), e_set=frozenset(e_set))

    @classmethod
    def build(cls, d_set: FrozenSet[Fact], e_set: FrozenSet[Fact]) -> "IndefiniteDatabase":
        return cls.model_construct(d_set=d_set, e_set=e_set)

    @property
    def facts(self) -> FrozenSet[Fact]:
        return self.d_set | self.e_set

    @property
    def null_count(self) -> int:
        return sum(f.null_count for f in self.d_set)


class TruthValue(str, Enum):
    """Three-valued truth, ordered false < unknown < true"""
    FALSE = "false"
    UNKNOWN = "unknown"
    TRUE = "true"

    @property
    def rank(self) -> int:
        return {"false": 0, "unknown": 1, "true": 2}[self.value]

    def __lt__(self, other: "TruthValue") -> bool:
        return self.rank < other.rank

    def __le__(self, other: "TruthValue") -> bool:
        return self.rank <= other.rank

    def __gt__(self, other: "TruthValue") -> bool:
        return self.rank > other.rank

    def __ge__(self, other: "TruthValue") -> bool:
        return self.rank >= other.rank


class Closure(str, Enum):
    """Closure operators over fact sets"""
    DOWN = "down"
    UP = "up"
    APPROX = "approx"
    TILDE = "tilde"


class Interpretation(BaseModel):
    """Three-valued interpretation restricted to a finite universe"""
    true_facts: FrozenSet[Fact] = frozenset()
    unknown_facts: FrozenSet[Fact] = frozenset()
    false_facts: FrozenSet[Fact] = frozenset()
