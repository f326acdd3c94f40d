import logging
from typing import Tuple

import click

from src.cli.dependencies import CommandOptions, common_options, load_instance
from src.cli.schemas import ExitCode, Report, ReportStatus
from src.cli.service import emit, fail, instance_digest
from src.exceptions import (
    BudgetExhaustedError, ContradictoryUpdateError, InstanceSyntaxError, StableModelCapExceededError,
    UniverseCapExceededError,
)
from src.repairs.existence import exists_relevant_weak_repair, exists_weak_repair
from src.repairs.schemas import CLASS_ALIASES, RepairClass, SearchStatus
from src.repairs.service import classify_update, find_repairs
from src.syntax.parser import parse_update
from src.syntax.printer import print_update

logger = logging.getLogger(__name__)

_CLASS_CHOICES = [c.value for c in RepairClass] + sorted(CLASS_ALIASES)

# the weak class whose nonemptiness decides each class
_EXISTENCE_CLASS = {
    RepairClass.WEAK: RepairClass.WEAK,
    RepairClass.REPAIR: RepairClass.WEAK,
    RepairClass.RELEVANT_WEAK: RepairClass.RELEVANT_WEAK,
    RepairClass.RELEVANT_REPAIR: RepairClass.RELEVANT_WEAK,
    RepairClass.CONSTRAINED_WEAK: RepairClass.CONSTRAINED_WEAK,
    RepairClass.CONSTRAINED_REPAIR: RepairClass.CONSTRAINED_WEAK,
}


def _repair_class(name: str) -> RepairClass:
    return CLASS_ALIASES.get(name) or RepairClass(name)


def _exists(instance, cls: RepairClass, options: CommandOptions, report: Report):
    budget = options.search_budget()
    target = _EXISTENCE_CLASS[cls]
    if target == RepairClass.WEAK:
        witness = exists_weak_repair(instance, budget)
        report.qualifier = f"decided over the relevant constants plus {budget.fresh_constants} fresh"
        found = [witness] if witness is not None else []
        status = SearchStatus.COMPLETE
    elif target == RepairClass.RELEVANT_WEAK:
        try:
            witness = exists_relevant_weak_repair(instance, budget)
            status = SearchStatus.COMPLETE
        except BudgetExhaustedError as error:
            witness, status = None, SearchStatus.BUDGET_EXHAUSTED
            report.budget["reason"] = error.reason
        report.qualifier = "decided over the relevant constants and null"
        found = [witness] if witness is not None else []
    else:
        result = find_repairs(instance, target, budget)
        found = result.updates[:1]
        status = result.status
        report.budget["reason"] = result.reason
    exists = bool(found)
    report.results = {
        "class": cls.value,
        "exists": exists,
        "witness": print_update(found[0]) if found else None,
    }
    lines = [f"{cls.value}: {'exists' if exists else 'none'}"]
    if found:
        lines.append(f"witness: {print_update(found[0])}")
    if not exists and status == SearchStatus.BUDGET_EXHAUSTED:
        report.status = ReportStatus.BUDGET_EXHAUSTED
        emit(report, options.fmt, lines, ExitCode.BUDGET_EXHAUSTED)
    emit(report, options.fmt, lines, ExitCode.OK if exists else ExitCode.NEGATIVE)


@click.command("repairs")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--class", "class_name", type=click.Choice(_CLASS_CHOICES), default="weak", show_default=True,
              help="Repair class to enumerate.")
@click.option("--exists", is_flag=True, help="Only decide whether a repair of the class exists.")
@common_options
def repairs(file: str, class_name: str, exists: bool, options: CommandOptions):
    """Enumerate the repairs of one class for FILE's request"""
    instance = load_instance(file)
    if instance.request is None:
        fail(f"{file} has no request block")
    cls = _repair_class(class_name)
    report = Report(command="repairs", instance_digest=instance_digest(instance), budget=options.summary())
    try:
        if exists:
            _exists(instance, cls, options, report)
        result = find_repairs(instance, cls, options.search_budget())
    except (UniverseCapExceededError, StableModelCapExceededError) as error:
        report.status = ReportStatus.BUDGET_EXHAUSTED
        report.budget["reason"] = str(error)
        emit(report, options.fmt, [], ExitCode.BUDGET_EXHAUSTED)

    updates = [print_update(u) for u in result.updates]
    report.qualifier = result.qualifier
    report.budget.update({"reason": result.reason, "candidates": result.candidates, "checks": result.checks})
    report.results = {"class": cls.value, "count": len(updates), "updates": updates}
    lines = [f"{len(updates)} {cls.value} repair(s)"] + updates
    if result.status == SearchStatus.BUDGET_EXHAUSTED:
        report.status = ReportStatus.BUDGET_EXHAUSTED
        emit(report, options.fmt, lines, ExitCode.BUDGET_EXHAUSTED)
    emit(report, options.fmt, lines)


@click.command("classify")
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("updates", nargs=-1, required=True)
@common_options
def classify(file: str, updates: Tuple[str, ...], options: CommandOptions):
    """Report whether each of UPDATES is a weak, relevant and constrained repair"""
    instance = load_instance(file)
    if instance.request is None:
        fail(f"{file} has no request block")
    parsed = []
    for text in updates:
        try:
            parsed.append(parse_update(text, instance.schema))
        except InstanceSyntaxError as error:
            for diagnostic in error.diagnostics:
                click.echo(diagnostic.render(text), err=True)
            raise click.exceptions.Exit(int(ExitCode.INVALID_INPUT))
        except ContradictoryUpdateError as error:
            fail(f"{text}: {error}")

    budget = options.search_budget()
    rows = []
    lines = []
    for u in parsed:
        verdict = classify_update(instance, u, budget)
        rows.append({
            "update": print_update(u),
            "canonical": verdict.canonical,
            "weak": verdict.weak,
            "relevant": verdict.relevant,
            "constrained": verdict.constrained,
            "new_constants": [str(c) for c in verdict.new_constants],
        })
        flags = [name for name in ("weak", "relevant", "constrained") if rows[-1][name]]
        lines.append(f"{print_update(u)}: {', '.join(flags) if verdict.weak else 'not a weak repair'}")
    report = Report(
        command="classify",
        instance_digest=instance_digest(instance),
        results={"updates": rows},
        budget=options.summary(),
    )
    emit(report, options.fmt, lines)
