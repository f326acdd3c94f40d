from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.core.schemas import Constant, Fact


class World(BaseModel):
    """A finite set of definite base facts"""
    model_config = ConfigDict(frozen=True)

    facts: FrozenSet[Fact] = frozenset()

    @classmethod
    def of(cls, facts: Iterable[Fact] = ()) -> "World":
        return cls(facts=frozenset(facts))

    @property
    def size(self) -> int:
        return len(self.facts)

    @property
    def sorted_facts(self) -> List[Fact]:
        return sorted(self.facts)

    @property
    def sort_key(self) -> Tuple:
        return (len(self.facts), tuple(f.sort_key for f in self.sorted_facts))

    def __contains__(self, fact: Fact) -> bool:
        return fact in self.facts

    def __str__(self) -> str:
        return "{" + ", ".join(str(f) for f in self.sorted_facts) + "}"


class FreshNumeralPolicy(str, Enum):
    """Where fresh numerals go relative to the instance numerals"""
    GAPS = "gaps"
    ABOVE = "above"


class DomainBudget(BaseModel):
    """Bounds of the small-model search

    `fresh_symbol_count` of None derives the count from the instance.
    """
    fresh_symbol_count: Optional[int] = Field(default=None, ge=0)
    fresh_cap: int = Field(default=6, ge=0)
    fresh_numeral_policy: FreshNumeralPolicy = FreshNumeralPolicy.GAPS
    world_universe_cap: int = Field(default=22, gt=0)


class ConstantPool(BaseModel):
    """Definite constants available to worlds: instance constants plus fresh ones"""
    model_config = ConfigDict(frozen=True)

    known: Tuple[Constant, ...] = ()
    fresh: Tuple[Constant, ...] = ()
    numeric: bool = False

    @property
    def constants(self) -> Tuple[Constant, ...]:
        return tuple(sorted(set(self.known) | set(self.fresh)))

    def __len__(self) -> int:
        return len(set(self.known) | set(self.fresh))
