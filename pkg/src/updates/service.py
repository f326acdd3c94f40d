import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set

from src.core.schemas import NULL, Constant, Fact, IndefiniteDatabase, TruthValue
from src.core.service import constants_of, db_truth, fact_universe
from src.exceptions import RepairPreconditionError
from src.syntax.schemas import Instance
from src.updates.schemas import ActionTarget, Update, UpdateAction
from src.views.reasoner import DeductiveReasoner
from src.worlds.constraints import outside_value
from src.worlds.pool import fresh_numerals, fresh_symbols, gap_classes
from src.worlds.schemas import DomainBudget

logger = logging.getLogger(__name__)

Profile = Sequence[TruthValue]
Changes = Dict[int, TruthValue]


def apply(i: IndefiniteDatabase, u: Update) -> IndefiniteDatabase:
    """Apply u to i: inserts then deletes on D, and the same on E"""
    d_set = (i.d_set | u.inserted(ActionTarget.D)) - u.deleted(ActionTarget.D)
    e_set = (i.e_set | u.inserted(ActionTarget.E)) - u.deleted(ActionTarget.E)
    return IndefiniteDatabase.build(frozenset(d_set), frozenset(e_set))


def apply_instance(inst: Instance, u: Update) -> Instance:
    return inst.with_db(apply(inst.db, u))


def new_constants(inst: Instance, u: Update) -> Set[Constant]:
    """NC(D,R,U): non-null constants of U that occur nowhere in the instance or request"""
    return set(u.constants) - inst.constants(include_request=True)


def canonicalize(i: IndefiniteDatabase, u: Update) -> Update:
    """Drop deletes of absent facts and inserts of present ones"""
    kept = []
    for action in u.actions:
        present = action.fact in (i.d_set if action.target == ActionTarget.D else i.e_set)
        if present != action.is_insert:
            kept.append(action)
    return Update(actions=tuple(kept))


def is_effective(i: IndefiniteDatabase, u: Update, action: UpdateAction) -> bool:
    """Whether dropping action from u changes the true or unknown facts of u applied to i

    Only facts of the action's predicate can change; they are compared over the
    constants of both databases plus null and one outside constant.
    """
    if action not in u:
        return False
    with_action = apply(i, u)
    without_action = apply(i, u.without(action))
    if with_action == without_action:
        return False
    if action.target == ActionTarget.D and action.fact.is_definite:
        # a definite fact is is below D only through itself
        return True
    pred = action.fact.pred
    facts = [f for f in with_action.facts | without_action.facts if f.pred == pred]
    constants = set(constants_of(facts))
    constants.add(outside_value(constants))
    constants.add(NULL)
    universe = fact_universe({pred: action.fact.arity}, constants)
    return any(db_truth(with_action, a) != db_truth(without_action, a) for a in universe)


def fulfills(
    inst: Instance,
    u: Update,
    budget: Optional[DomainBudget] = None,
    deadline: Optional[float] = None,
) -> bool:
    """U is a weak repair: the updated database is consistent and gives every requested fact its requested value

    Raises BudgetExhaustedError when the monotonic deadline passes first.
    """
    if inst.request is None:
        raise RepairPreconditionError("The instance has no request")
    with DeductiveReasoner(apply_instance(inst, u), budget, deadline=deadline) as reasoner:
        return reasoner.fulfills(inst.request.want_true, inst.request.want_false)


def representatives(known: Iterable[Constant], numeric: bool) -> List[Constant]:
    """One constant per way of being new: a numeral in each gap, or one fresh symbol"""
    known = [c for c in known if not c.is_null]
    if numeric:
        numerals = [c.value for c in known if c.is_numeral]
        return [Constant.numeral(v) for v in fresh_numerals(numerals, gap_classes(numerals))]
    used = {str(c.value) for c in known}
    return [Constant.symbol(n) for n in fresh_symbols(used, 1)]


def comparison_atoms(inst: Instance, updates: Iterable[Update] = ()) -> List[Fact]:
    """Base atoms over which two updates are compared"""
    constants = set(inst.constants(include_request=True))
    for u in updates:
        constants |= set(u.constants)
    numeric = inst.has_builtin_le or any(c.is_numeral for c in constants)
    constants |= set(representatives(constants, numeric))
    constants.add(NULL)
    return fact_universe(inst.schema.base_preds, constants)


def valuation_profile(
    inst: Instance,
    u: Update,
    atoms: Sequence[Fact],
    budget: Optional[DomainBudget] = None,
) -> List[TruthValue]:
    """Truth of each atom in the updated database; every atom is true in an inconsistent database"""
    extra = {c for a in atoms for c in a.constants}
    with DeductiveReasoner(apply_instance(inst, u), budget, extra=extra) as reasoner:
        if not reasoner.is_consistent():
            return [TruthValue.TRUE] * len(atoms)
        return [reasoner.truth(a) for a in atoms]


def changes(base: Profile, profile: Profile) -> Changes:
    """Positions where profile differs from base"""
    return {k: v for k, (b, v) in enumerate(zip(base, profile)) if b != v}


def changes_leq(base: Profile, cu: Changes, cv: Changes) -> bool:
    """The per-atom conditions of leq_update(U, V), checked only where either update changed something"""
    for k in set(cu) | set(cv):
        original = base[k]
        vu = cu.get(k, original)
        vv = cv.get(k, original)
        if original == TruthValue.TRUE and not vu >= vv:
            return False
        if original == TruthValue.FALSE and not vv >= vu:
            return False
        if original == TruthValue.UNKNOWN and vu != TruthValue.UNKNOWN and vu != vv:
            return False
    return True


def profile_leq(base: Profile, pu: Profile, pv: Profile) -> bool:
    return changes_leq(base, changes(base, pu), changes(base, pv))


def nc_leq(nu: Set[Constant], nv: Set[Constant]) -> Optional[bool]:
    """True when NC decides leq_update(U, V), False when it rules it out, None when the sets are equal"""
    if nu == nv:
        return None
    return nu < nv


def leq_update(
    inst: Instance,
    u: Update,
    v: Update,
    budget: Optional[DomainBudget] = None,
) -> bool:
    """U is below V: fewer new constants, or the same ones and no more truth-value change"""
    decided = nc_leq(new_constants(inst, u), new_constants(inst, v))
    if decided is not None:
        return decided
    atoms = comparison_atoms(inst, [u, v])
    base = valuation_profile(inst, Update(), atoms, budget)
    pu = valuation_profile(inst, u, atoms, budget)
    pv = valuation_profile(inst, v, atoms, budget)
    return profile_leq(base, pu, pv)


def strictly_below(
    inst: Instance,
    u: Update,
    v: Update,
    budget: Optional[DomainBudget] = None,
) -> bool:
    """U ⊏ V"""
    return leq_update(inst, u, v, budget) and not leq_update(inst, v, u, budget)
