import logging

import click

from src.cli.dependencies import CommandOptions, common_options, load_instance
from src.cli.schemas import ExitCode, Report, ReportStatus
from src.cli.service import emit, instance_digest
from src.exceptions import UniverseCapExceededError
from src.syntax.printer import print_fact
from src.worlds.pool import candidate_universe, constant_pool
from src.worlds.service import enumerate_worlds

logger = logging.getLogger(__name__)


@click.command("worlds")
@click.argument("file", type=click.Path(dir_okay=False))
@common_options
def worlds(file: str, options: CommandOptions):
    """List the possible worlds of FILE's database under its constraints"""
    instance = load_instance(file)
    budget = options.domain_budget()
    pool = constant_pool(instance.db, instance.ics, budget)
    report = Report(
        command="worlds",
        instance_digest=instance_digest(instance),
        budget={**options.summary(), "pool": [str(c) for c in pool.constants]},
    )
    try:
        found = enumerate_worlds(instance.db, instance.ics, budget)
    except UniverseCapExceededError as error:
        _, optional = candidate_universe(instance.db, pool)
        report.status = ReportStatus.BUDGET_EXHAUSTED
        report.budget["reason"] = str(error)
        report.results = {"optional_atoms": len(optional), "worlds": []}
        emit(report, options.fmt, [f"optional atoms: {len(optional)}"], ExitCode.BUDGET_EXHAUSTED)

    rendered = [[print_fact(f) for f in w.sorted_facts] for w in found]
    report.results = {"count": len(found), "worlds": rendered}
    lines = [f"pool: {{{', '.join(report.budget['pool'])}}}", f"{len(found)} world(s)"]
    lines += ["{" + ", ".join(facts) + "}" for facts in rendered]
    code = ExitCode.OK if found else ExitCode.NEGATIVE
    emit(report, options.fmt, lines, code)
