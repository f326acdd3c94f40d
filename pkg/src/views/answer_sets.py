"""
Answer sets of ground programs over a world.

Horn programs have a unique least model; programs whose atom graph has no
cycle through negation have a unique perfect model; everything else is
decided by guessing the negated derived atoms and checking the reduct.
"""

import logging
from collections import defaultdict
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

from src.config import settings
from src.core.schemas import Fact
from src.exceptions import StableModelCapExceededError
from src.syntax.service import topological_components
from src.views.schemas import GroundProgram, GroundRule

logger = logging.getLogger(__name__)


def least_model(rules: Sequence[GroundRule], facts: Iterable[Fact]) -> Set[Fact]:
    """Least model of the positive parts of rules over facts, by counter propagation"""
    model: Set[Fact] = set(facts)
    waiting: Dict[Fact, List[int]] = defaultdict(list)
    missing: List[int] = []
    queue: List[Fact] = []
    for i, rule in enumerate(rules):
        pending = {p for p in rule.pos if p not in model}
        missing.append(len(pending))
        for p in pending:
            waiting[p].append(i)
        if not pending and rule.head not in model:
            model.add(rule.head)
            queue.append(rule.head)
    while queue:
        fact = queue.pop()
        for i in waiting.pop(fact, ()):
            missing[i] -= 1
            if missing[i] == 0 and rules[i].head not in model:
                model.add(rules[i].head)
                queue.append(rules[i].head)
    return model


def reduct(program: GroundProgram, model: Set[Fact]) -> List[GroundRule]:
    """Rules whose negated atoms are all outside model, with negation dropped"""
    return [GroundRule.build(r.head, r.pos) for r in program.rules if not any(n in model for n in r.neg)]


def is_answer_set(program: GroundProgram, world: Iterable[Fact], model: Iterable[Fact]) -> bool:
    model = set(model)
    return least_model(reduct(program, model), world) == model


def _atom_components(program: GroundProgram) -> Optional[List[List[Fact]]]:
    """Derived atoms grouped into components in dependency order, or None when a cycle goes through negation"""
    heads = program.heads
    keys = {f: str(i) for i, f in enumerate(sorted(heads))}
    facts = {k: f for f, k in keys.items()}
    adjacency: Dict[str, Set[str]] = defaultdict(set)
    negative = []
    for rule in program.rules:
        for p in rule.pos:
            if p in heads:
                adjacency[keys[p]].add(keys[rule.head])
        for n in rule.neg:
            if n in heads:
                adjacency[keys[n]].add(keys[rule.head])
                negative.append((keys[n], keys[rule.head]))
    components = topological_components(list(facts), adjacency)
    member = {k: i for i, comp in enumerate(components) for k in comp}
    if any(member[s] == member[t] for s, t in negative):
        return None
    return [[facts[k] for k in comp] for comp in components]


def stratified_model(program: GroundProgram, world: Iterable[Fact]) -> Optional[Set[Fact]]:
    """Perfect model when no cycle goes through negation, None otherwise"""
    components = _atom_components(program)
    if components is None:
        return None
    by_head: Dict[Fact, List[GroundRule]] = defaultdict(list)
    for rule in program.rules:
        by_head[rule.head].append(rule)
    model = set(world)
    for component in components:
        applicable = [
            r for head in component for r in by_head[head] if not any(n in model for n in r.neg)
        ]
        model = least_model(applicable, model)
    return model


def answer_sets(
    program: GroundProgram,
    world: Iterable[Fact],
    negation_cap: Optional[int] = None,
) -> List[FrozenSet[Fact]]:
    """All answer sets of program ∪ world, in canonical order"""
    world = set(world)
    if program.is_horn:
        return [frozenset(least_model(program.rules, world))]
    model = stratified_model(program, world)
    if model is not None:
        return [frozenset(model)]
    return brute_answer_sets(program, world, negation_cap)


def brute_answer_sets(
    program: GroundProgram,
    world: Iterable[Fact],
    negation_cap: Optional[int] = None,
) -> List[FrozenSet[Fact]]:
    """Guess which negated derived atoms hold and keep the guesses the reduct reproduces"""
    world = set(world)
    cap = settings.STABLE_MODEL_NEGATION_CAP if negation_cap is None else negation_cap
    guessable = program.negated_derived
    if len(guessable) > cap:
        raise StableModelCapExceededError(len(guessable), cap)
    found: Dict[FrozenSet[Fact], None] = {}
    for size in range(len(guessable) + 1):
        for guess in combinations(guessable, size):
            assumed = world | set(guess)
            candidate = least_model(reduct(program, assumed), world)
            if {f for f in guessable if f in candidate} == set(guess):
                found[frozenset(candidate)] = None
    logger.debug("brute force over %d negated atoms found %d answer sets", len(guessable), len(found))
    return sorted(found, key=lambda m: (len(m), sorted(f.sort_key for f in m)))
