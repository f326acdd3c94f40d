import logging
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Set

from src.core.index import FactIndex, join, match
from src.core.schemas import Constant, Fact
from src.syntax.schemas import Rule
from src.syntax.service import predicate_strata
from src.views.schemas import GroundProgram, GroundRule
from src.worlds.constraints import ground_atom
from src.worlds.pool import completions

logger = logging.getLogger(__name__)


def _instance(rule: Rule, binding: Dict[str, Constant]) -> GroundRule:
    return GroundRule.build(
        ground_atom(rule.head, binding),
        tuple(ground_atom(a, binding) for a in rule.body_pos),
        tuple(ground_atom(a, binding) for a in rule.body_neg),
    )


def ground(view: Sequence[Rule], pool: Iterable[Constant]) -> GroundProgram:
    """Every instantiation of every rule with variables over pool"""
    constants = sorted(set(pool))
    rules: List[GroundRule] = []
    for rule in view:
        variables = rule.variables
        for values in product(constants, repeat=len(variables)):
            rules.append(_instance(rule, dict(zip(variables, values))))
    return GroundProgram.of(rules)


def ground_relevant(view: Sequence[Rule], facts: Iterable[Fact]) -> GroundProgram:
    """Rule instances whose positive bodies can hold over facts and derivable heads

    Rules are processed stratum by stratum; recursive strata are repeated until
    no new instance appears.
    """
    index = FactIndex(facts)
    by_head: Dict[str, List[Rule]] = {}
    for rule in view:
        by_head.setdefault(rule.head.pred, []).append(rule)
    rules: Dict[GroundRule, None] = {}
    for stratum in predicate_strata(view):
        stratum_rules = [r for p in stratum for r in by_head.get(p, ())]
        recursive = any(a.pred in stratum for r in stratum_rules for a in r.body_pos)
        while True:
            added = False
            for rule in stratum_rules:
                patterns = [a.pattern for a in rule.body_pos]
                for binding in list(join(patterns, index)):
                    instance = _instance(rule, binding)
                    if instance in rules:
                        continue
                    rules[instance] = None
                    added = True
                    index.add(instance.head)
            if not (recursive and added):
                break
    program = GroundProgram.of(rules)
    logger.debug("relevant grounding: %d rule instances over %d facts", len(program), len(index))
    return program


def ground_for_goals(
    view: Sequence[Rule],
    goals: Iterable[Fact],
    pool: Iterable[Constant],
    derived: Optional[Set[str]] = None,
) -> GroundProgram:
    """Rule instances that can contribute to the goals, top-down over the pool

    Each derived goal is unified with every rule head; variables the head does
    not bind range over the pool, and derived body atoms become new goals.
    """
    constants = sorted(set(pool))
    derived = derived if derived is not None else {r.head.pred for r in view}
    by_head: Dict[str, List[Rule]] = {}
    for rule in view:
        by_head.setdefault(rule.head.pred, []).append(rule)
    rules: Dict[GroundRule, None] = {}
    seen: Set[Fact] = set()
    agenda = [c for g in goals if g.pred in derived for c in completions(g, constants)]
    while agenda:
        goal = agenda.pop()
        if goal in seen:
            continue
        seen.add(goal)
        for rule in by_head.get(goal.pred, ()):
            binding = match(rule.head.pattern[1], goal.args, {})
            if binding is None:
                continue
            free = [v for v in rule.variables if v not in binding]
            for values in product(constants, repeat=len(free)):
                full = dict(binding)
                full.update(zip(free, values))
                instance = _instance(rule, full)
                if instance in rules:
                    continue
                rules[instance] = None
                for atom in instance.pos + instance.neg:
                    if atom.pred in derived and atom not in seen:
                        agenda.append(atom)
    program = GroundProgram.of(sorted(rules, key=lambda r: (r.head.sort_key, str(r))))
    logger.debug("goal-directed grounding: %d rule instances for %d goals", len(program), len(seen))
    return program
