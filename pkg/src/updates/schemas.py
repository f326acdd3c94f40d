from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple

from pydantic import BaseModel, ConfigDict

from src.core.schemas import Constant, Fact
from src.exceptions import ContradictoryUpdateError


class ActionSign(str, Enum):
    """Insert or delete"""
    INSERT = "insert"
    DELETE = "delete"

    @property
    def symbol(self) -> str:
        return "+" if self == ActionSign.INSERT else "-"

    @classmethod
    def from_symbol(cls, symbol: str) -> "ActionSign":
        return cls.INSERT if symbol == "+" else cls.DELETE


class ActionTarget(str, Enum):
    """Which set, D or E, an action touches"""
    D = "d"
    E = "e"


class UpdateAction(BaseModel):
    """One of +a@d, -a@d, +a@e, -a@e"""
    model_config = ConfigDict(frozen=True)

    sign: ActionSign
    target: ActionTarget = ActionTarget.D
    fact: Fact

    @classmethod
    def insert(cls, fact: Fact, target: ActionTarget = ActionTarget.D) -> "UpdateAction":
        return cls(sign=ActionSign.INSERT, target=target, fact=fact)

    @classmethod
    def delete(cls, fact: Fact, target: ActionTarget = ActionTarget.D) -> "UpdateAction":
        return cls(sign=ActionSign.DELETE, target=target, fact=fact)

    @property
    def is_insert(self) -> bool:
        return self.sign == ActionSign.INSERT

    @property
    def sort_key(self) -> Tuple:
        return (self.fact.sort_key, self.target.value, self.sign.symbol)

    def with_fact(self, fact: Fact) -> "UpdateAction":
        return UpdateAction(sign=self.sign, target=self.target, fact=fact)

    def __lt__(self, other: "UpdateAction") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"{self.sign.symbol}{self.fact}@{self.target.value}"


def is_update(actions: Iterable[UpdateAction]) -> bool:
    """No fact is both inserted into and deleted from the same target"""
    seen: Dict[Tuple[Fact, ActionTarget], ActionSign] = {}
    for action in actions:
        key = (action.fact, action.target)
        if seen.setdefault(key, action.sign) != action.sign:
            return False
    return True


class Update(BaseModel):
    """A contradiction-free set of update actions, kept in canonical order"""
    model_config = ConfigDict(frozen=True)

    actions: Tuple[UpdateAction, ...] = ()

    @classmethod
    def of(cls, actions: Iterable[UpdateAction] = ()) -> "Update":
        actions = list(dict.fromkeys(actions))
        if not is_update(actions):
            clash = sorted(
                str(a) for a in actions
                if any(b.fact == a.fact and b.target == a.target and b.sign != a.sign for b in actions)
            )
            raise ContradictoryUpdateError(f"Update inserts and deletes the same fact: {', '.join(clash)}")
        return cls(actions=tuple(sorted(actions)))

    def inserted(self, target: ActionTarget) -> Set[Fact]:
        return {a.fact for a in self.actions if a.is_insert and a.target == target}

    def deleted(self, target: ActionTarget) -> Set[Fact]:
        return {a.fact for a in self.actions if not a.is_insert and a.target == target}

    @property
    def constants(self) -> FrozenSet[Constant]:
        """Non-null constants of the actions"""
        return frozenset(c for a in self.actions for c in a.fact.constants)

    @property
    def predicates(self) -> FrozenSet[str]:
        return frozenset(a.fact.pred for a in self.actions)

    @property
    def facts(self) -> List[Fact]:
        return [a.fact for a in self.actions]

    @property
    def sort_key(self) -> Tuple:
        return (len(self.actions), tuple(a.sort_key for a in self.actions))

    def without(self, action: UpdateAction) -> "Update":
        return Update(actions=tuple(a for a in self.actions if a != action))

    def __len__(self) -> int:
        return len(self.actions)

    def __contains__(self, action: UpdateAction) -> bool:
        return action in self.actions

    def __lt__(self, other: "Update") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return "{" + ", ".join(str(a) for a in self.actions) + "}"
