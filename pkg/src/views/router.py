from typing import Tuple

import click

from src.cli.dependencies import CommandOptions, common_options, load_instance
from src.cli.schemas import ExitCode, Report, ReportStatus
from src.cli.service import emit, fail, instance_digest
from src.exceptions import (
    InconsistentDatabaseError, InstanceSyntaxError, StableModelCapExceededError, UniverseCapExceededError,
)
from src.syntax.parser import parse_fact
from src.syntax.printer import print_fact
from src.syntax.service import classify_program
from src.views.service import ddb_consistent, ddb_truths
from src.worlds.service import is_consistent

_CAPS = (UniverseCapExceededError, StableModelCapExceededError)


@click.command("check")
@click.argument("file", type=click.Path(dir_okay=False))
@common_options
def check(file: str, options: CommandOptions):
    """Validate FILE and decide whether its deductive database is consistent"""
    instance = load_instance(file)
    budget = options.domain_budget()
    report = Report(
        command="check",
        instance_digest=instance_digest(instance),
        budget=options.summary(),
    )
    program_class = classify_program(instance.view)
    try:
        worlds_exist = is_consistent(instance.db, instance.ics, budget)
        consistent = worlds_exist and ddb_consistent(instance, budget)
    except _CAPS as error:
        report.status = ReportStatus.BUDGET_EXHAUSTED
        report.budget["reason"] = str(error)
        report.results = {"program_class": program_class.value}
        emit(report, options.fmt, [f"program class: {program_class.value}"], ExitCode.BUDGET_EXHAUSTED)

    report.results = {
        "program_class": program_class.value,
        "worlds_exist": worlds_exist,
        "consistent": consistent,
    }
    lines = [
        f"program class: {program_class.value}",
        "consistent" if consistent else ("inconsistent" if not worlds_exist else "inconsistent: some world has no answer set"),
    ]
    emit(report, options.fmt, lines, ExitCode.OK if consistent else ExitCode.NEGATIVE)


@click.command("eval")
@click.argument("file", type=click.Path(dir_okay=False))
@click.argument("facts", nargs=-1, required=True)
@common_options
def eval_facts(file: str, facts: Tuple[str, ...], options: CommandOptions):
    """Print the truth value (true, unknown or false) of each of FACTS in FILE"""
    instance = load_instance(file)
    parsed = []
    for text in facts:
        try:
            parsed.append(parse_fact(text, instance.schema))
        except InstanceSyntaxError as error:
            for diagnostic in error.diagnostics:
                click.echo(diagnostic.render(text), err=True)
            raise click.exceptions.Exit(int(ExitCode.INVALID_INPUT))

    report = Report(command="eval", instance_digest=instance_digest(instance), budget=options.summary())
    try:
        values = ddb_truths(instance, parsed, options.domain_budget())
    except InconsistentDatabaseError as error:
        fail(str(error), ExitCode.NEGATIVE)
    except _CAPS as error:
        report.status = ReportStatus.BUDGET_EXHAUSTED
        report.budget["reason"] = str(error)
        emit(report, options.fmt, [], ExitCode.BUDGET_EXHAUSTED)

    report.results = {"values": {print_fact(f): values[f].value for f in parsed}}
    lines = [f"{print_fact(f)}: {values[f].value}" for f in parsed]
    emit(report, options.fmt, lines)
