from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from src.core.schemas import Constant, Fact

# An atom with variables: variable names are plain strings, constants are Constant values.
Term = Union[Constant, str]
Pattern = Tuple[str, Tuple[Term, ...]]
Binding = Dict[str, Constant]


class FactIndex:
    """Facts grouped by predicate, with per-position lookup tables for joins.

    Buckets are insertion-ordered so joins enumerate deterministically.
    """

    def __init__(self, facts: Iterable[Fact] = ()):
        self._by_pred: Dict[str, Dict[Fact, None]] = defaultdict(dict)
        self._by_position: Dict[Tuple[str, int, Constant], Dict[Fact, None]] = defaultdict(dict)
        self._all: Dict[Fact, None] = {}
        for fact in facts:
            self.add(fact)

    def add(self, fact: Fact) -> bool:
        if fact in self._all:
            return False
        self._all[fact] = None
        self._by_pred[fact.pred][fact] = None
        for i, arg in enumerate(fact.args):
            self._by_position[(fact.pred, i, arg)][fact] = None
        return True

    def __contains__(self, fact: Fact) -> bool:
        return fact in self._all

    def __len__(self) -> int:
        return len(self._all)

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._all)

    def facts(self, pred: str) -> List[Fact]:
        return list(self._by_pred.get(pred, ()))

    def candidates(self, pred: str, bound: Dict[int, Constant]) -> List[Fact]:
        """Facts of pred whose arguments equal the bound positions"""
        if not bound:
            return list(self._by_pred.get(pred, ()))
        smallest: Optional[Dict[Fact, None]] = None
        for i, c in bound.items():
            bucket = self._by_position.get((pred, i, c))
            if not bucket:
                return []
            if smallest is None or len(bucket) < len(smallest):
                smallest = bucket
        return [f for f in smallest if all(f.args[i] == c for i, c in bound.items())]

    def above(self, fact: Fact) -> List[Fact]:
        """Indexed facts at least as informative as fact"""
        bound = {i: a for i, a in enumerate(fact.args) if not a.is_null}
        return [f for f in self.candidates(fact.pred, bound) if len(f.args) == len(fact.args)]


def match(args: Sequence[Term], values: Sequence[Constant], binding: Binding) -> Optional[Binding]:
    """Extend binding so that args map onto values, or None"""
    if len(args) != len(values):
        return None
    extended = None
    for term, value in zip(args, values):
        if isinstance(term, Constant):
            if term != value:
                return None
            continue
        current = binding.get(term) if extended is None else extended.get(term)
        if current is None:
            if extended is None:
                extended = dict(binding)
            extended[term] = value
        elif current != value:
            return None
    return binding if extended is None else extended


def substitute(pattern: Pattern, binding: Binding) -> Fact:
    pred, args = pattern
    return Fact.build(pred, tuple(t if isinstance(t, Constant) else binding[t] for t in args))


def _bound_count(pattern: Pattern, binding: Binding) -> int:
    return sum(1 for t in pattern[1] if isinstance(t, Constant) or t in binding)


def join(patterns: Sequence[Pattern], index: FactIndex, binding: Optional[Binding] = None) -> Iterator[Binding]:
    """Yield every extension of binding that maps all patterns into the index.

    Yielded bindings are shared; callers copy before mutating.
    """
    yield from _join(list(patterns), index, dict(binding or {}))


def _join(remaining: List[Pattern], index: FactIndex, binding: Binding) -> Iterator[Binding]:
    if not remaining:
        yield binding
        return
    best = max(range(len(remaining)), key=lambda k: _bound_count(remaining[k], binding))
    pred, args = remaining[best]
    rest = remaining[:best] + remaining[best + 1:]
    bound = {}
    for i, term in enumerate(args):
        if isinstance(term, Constant):
            bound[i] = term
        elif term in binding:
            bound[i] = binding[term]
    for fact in index.candidates(pred, bound):
        extended = match(args, fact.args, binding)
        if extended is not None:
            yield from _join(rest, index, extended)
