from enum import Enum
from typing import FrozenSet, List, Set, Tuple

from pydantic import BaseModel, ConfigDict

from src.core.schemas import Fact


class GroundRule(BaseModel):
    """A variable-free rule head :- pos, not neg"""
    model_config = ConfigDict(frozen=True)

    head: Fact
    pos: Tuple[Fact, ...] = ()
    neg: Tuple[Fact, ...] = ()

    @classmethod
    def build(cls, head: Fact, pos: Tuple[Fact, ...] = (), neg: Tuple[Fact, ...] = ()) -> "GroundRule":
        return cls.model_construct(head=head, pos=pos, neg=neg)

    def __str__(self) -> str:
        body = [str(f) for f in self.pos] + [f"not {f}" for f in self.neg]
        return f"{self.head} :- {', '.join(body)}." if body else f"{self.head}."


class GroundProgram(BaseModel):
    """Ground rules in a deterministic order; heads are derived facts"""
    model_config = ConfigDict(frozen=True)

    rules: Tuple[GroundRule, ...] = ()

    @classmethod
    def of(cls, rules) -> "GroundProgram":
        return cls.model_construct(rules=tuple(dict.fromkeys(rules)))

    @property
    def heads(self) -> Set[Fact]:
        return {r.head for r in self.rules}

    @property
    def is_horn(self) -> bool:
        return not any(r.neg for r in self.rules)

    @property
    def negated_derived(self) -> List[Fact]:
        """Derivable facts that occur negated in some body"""
        heads = self.heads
        return sorted({n for r in self.rules for n in r.neg if n in heads})

    def __len__(self) -> int:
        return len(self.rules)


class ReasoningStrategy(str, Enum):
    """How a deductive database is decided"""
    COMPLETION = "completion"
    ENUMERATION = "enumeration"


class AnswerSetSummary(BaseModel):
    """Answer sets of the view over one possible world"""
    world: FrozenSet[Fact]
    answer_sets: List[FrozenSet[Fact]] = []
