from itertools import product
from typing import Dict, Iterable, List, Optional, Set

from src.core.schemas import (
    Closure, Constant, Fact, IndefiniteDatabase, Interpretation, NULL, Schema, TruthValue,
)


def leq_info(a: Fact, b: Fact) -> bool:
    """a ⪯ b: same predicate and every argument of a is equal to b's or null"""
    if a.pred != b.pred or len(a.args) != len(b.args):
        return False
    return all(x.is_null or x == y for x, y in zip(a.args, b.args))


def strictly_less(a: Fact, b: Fact) -> bool:
    return leq_info(a, b) and a != b


def compatible(a: Fact, b: Fact) -> bool:
    """a ≈ b: some fact is at least as informative as both"""
    if a.pred != b.pred or len(a.args) != len(b.args):
        return False
    return all(x.is_null or y.is_null or x == y for x, y in zip(a.args, b.args))


def least_upper_bound(a: Fact, b: Fact) -> Optional[Fact]:
    if not compatible(a, b):
        return None
    return Fact.build(a.pred, tuple(y if x.is_null else x for x, y in zip(a.args, b.args)))


def in_closure(facts: Iterable[Fact], a: Fact, which: Closure) -> bool:
    """Membership of a in S↓, S↑, S≈ or S~ without materializing the closure"""
    same = [b for b in facts if b.pred == a.pred]
    if which == Closure.DOWN:
        return any(leq_info(a, b) for b in same)
    if which == Closure.UP:
        return any(leq_info(b, a) for b in same)
    if which == Closure.APPROX:
        return any(compatible(a, b) for b in same)
    return any(compatible(a, b) for b in same) and not any(leq_info(a, b) for b in same)


def materialize(facts: Iterable[Fact], universe: Iterable[Fact], which: Closure) -> Set[Fact]:
    """The closure of facts intersected with a finite universe"""
    facts = list(facts)
    return {a for a in universe if in_closure(facts, a, which)}


def fact_universe(preds: Dict[str, int], constants: Iterable[Constant]) -> List[Fact]:
    """Every fact over preds with arguments drawn from constants, in canonical order"""
    pool = sorted(set(constants), key=lambda c: c.sort_key)
    universe = []
    for pred in sorted(preds):
        for args in product(pool, repeat=preds[pred]):
            universe.append(Fact.build(pred, tuple(args)))
    return universe


def db_truth(i: IndefiniteDatabase, a: Fact, schema: Optional[Schema] = None) -> TruthValue:
    """True on the down-closure of D, unknown on its approximation outside the up-closure of E, false otherwise"""
    if schema is not None:
        schema.check_fact(a, base_only=True)
    if in_closure(i.d_set, a, Closure.DOWN):
        return TruthValue.TRUE
    if in_closure(i.d_set, a, Closure.APPROX) and not in_closure(i.e_set, a, Closure.UP):
        return TruthValue.UNKNOWN
    return TruthValue.FALSE


def interpretation(i: IndefiniteDatabase, universe: Iterable[Fact]) -> Interpretation:
    """I_t, I_u and I_f of the database restricted to universe"""
    true_facts, unknown_facts, false_facts = set(), set(), set()
    for a in universe:
        value = db_truth(i, a)
        if value == TruthValue.TRUE:
            true_facts.add(a)
        elif value == TruthValue.UNKNOWN:
            unknown_facts.add(a)
        else:
            false_facts.add(a)
    return Interpretation(
        true_facts=frozenset(true_facts),
        unknown_facts=frozenset(unknown_facts),
        false_facts=frozenset(false_facts),
    )


def constants_of(facts: Iterable[Fact]) -> Set[Constant]:
    """Non-null constants occurring in facts"""
    found = set()
    for f in facts:
        found.update(a for a in f.args if not a.is_null)
    return found


def sorted_facts(facts: Iterable[Fact]) -> List[Fact]:
    return sorted(facts, key=lambda f: f.sort_key)


def sorted_constants(constants: Iterable[Constant]) -> List[Constant]:
    return sorted(constants, key=lambda c: c.sort_key)


def with_null(constants: Iterable[Constant]) -> List[Constant]:
    return sorted_constants(set(constants) | {NULL})
