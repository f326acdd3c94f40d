import logging
from itertools import product
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from src.core.schemas import Constant, Fact, IndefiniteDatabase
from src.core.service import constants_of, leq_info
from src.syntax.schemas import ComparisonOp, Constraint, Rule
from src.worlds.schemas import ConstantPool, DomainBudget, FreshNumeralPolicy

logger = logging.getLogger(__name__)


def gap_classes(numerals: Iterable[int]) -> int:
    """Number of ways a new numeral can sit relative to the given ones"""
    values = sorted(set(numerals))
    if not values:
        return 1
    below = 1 if values[0] > 1 else 0
    interior = sum(1 for x, y in zip(values, values[1:]) if y - x > 1)
    return 1 + below + interior


def fresh_numerals(numerals: Iterable[int], count: int, policy: FreshNumeralPolicy = FreshNumeralPolicy.GAPS) -> List[int]:
    """Fresh numerals: above the maximum, below the minimum, interior gaps ascending, then further above"""
    values = sorted(set(numerals))
    top = values[-1] if values else 0
    chosen: List[int] = []

    def candidates() -> Iterator[int]:
        yield top + 1
        if policy == FreshNumeralPolicy.GAPS and values:
            if values[0] > 1:
                yield values[0] - 1
            for x, y in zip(values, values[1:]):
                if y - x > 1:
                    yield x + 1
        step = 2
        while True:
            yield top + step
            step += 1

    for value in candidates():
        if len(chosen) >= count:
            break
        if value not in chosen:
            chosen.append(value)
    return chosen


def fresh_symbols(used: Set[str], count: int, stem: str = "f") -> List[str]:
    names, i = [], 1
    while len(names) < count:
        name = f"{stem}{i}"
        if name not in used:
            names.append(name)
        i += 1
    return names


def constant_pool(
    db: IndefiniteDatabase,
    ics: Sequence[Constraint] = (),
    budget: Optional[DomainBudget] = None,
    extra: Iterable[Constant] = (),
    view: Sequence[Rule] = (),
) -> ConstantPool:
    """Instance constants plus the budgeted fresh constants"""
    budget = budget or DomainBudget()
    known: Set[Constant] = constants_of(db.facts)
    for c in ics:
        known |= c.constants
    for r in view:
        for atom in (r.head,) + r.body_pos + r.body_neg:
            known |= atom.constants
    known |= set(extra)
    known = {c for c in known if not c.is_null}

    numerals = [c.value for c in known if c.is_numeral]
    has_le = any(b.op == ComparisonOp.LE for c in ics for b in c.builtins)
    numeric = bool(numerals) or has_le

    if budget.fresh_symbol_count is not None:
        count = budget.fresh_symbol_count
    else:
        needed = db.null_count + sum(len(c.exist_vars) for c in ics)
        classes = gap_classes(numerals) if numeric else 1
        count = min(budget.fresh_cap, max(needed, classes))
        if max(needed, classes) > budget.fresh_cap:
            logger.warning("fresh constant count capped at %d (wanted %d)", budget.fresh_cap, max(needed, classes))

    if numeric:
        fresh = [Constant.numeral(v) for v in fresh_numerals(numerals, count, budget.fresh_numeral_policy)]
    else:
        used = {str(c.value) for c in known if c.is_symbol}
        fresh = [Constant.symbol(n) for n in fresh_symbols(used, count)]

    pool = ConstantPool(known=tuple(sorted(known)), fresh=tuple(fresh), numeric=numeric)
    logger.debug("constant pool: known=%s fresh=%s", [str(c) for c in pool.known], [str(c) for c in pool.fresh])
    return pool


def completions(fact: Fact, constants: Sequence[Constant]) -> Iterator[Fact]:
    """Definite facts above fact with null positions filled from constants"""
    slots = [i for i, a in enumerate(fact.args) if a.is_null]
    if not slots:
        yield fact
        return
    for values in product(constants, repeat=len(slots)):
        args = list(fact.args)
        for i, v in zip(slots, values):
            args[i] = v
        yield Fact.build(fact.pred, tuple(args))


def candidate_universe(db: IndefiniteDatabase, pool: ConstantPool) -> Tuple[List[Fact], List[Fact]]:
    """Mandatory facts (definite facts of D) and optional ones (other definite facts in I_t ∪ I_u)"""
    mandatory = sorted(f for f in db.d_set if f.is_definite)
    mandatory_set = set(mandatory)
    constants = pool.constants
    exceptions_by_pred = {}
    for e in db.e_set:
        exceptions_by_pred.setdefault(e.pred, []).append(e)
    optional: Set[Fact] = set()
    for d in db.d_set:
        if d.is_definite:
            continue
        excepted = exceptions_by_pred.get(d.pred, ())
        for c in completions(d, constants):
            if c in mandatory_set or c in optional:
                continue
            if any(leq_info(e, c) for e in excepted):
                continue
            optional.add(c)
    return mandatory, sorted(optional)
