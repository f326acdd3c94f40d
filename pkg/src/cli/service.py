import hashlib
import logging
from typing import Iterable, List, Optional

import click

from src.cli.schemas import ExitCode, OutputFormat, Report, ReportStatus
from src.syntax.printer import print_instance
from src.syntax.schemas import Instance

logger = logging.getLogger(__name__)


def instance_digest(inst: Instance) -> str:
    """sha256 of the canonical print, so equivalent files share a digest"""
    return hashlib.sha256(print_instance(inst).encode("utf-8")).hexdigest()


def render_json(report: Report) -> str:
    return report.model_dump_json(indent=2)


def render_text(report: Report, lines: Iterable[str]) -> str:
    out: List[str] = list(lines)
    if report.qualifier:
        out.append(f"note: {report.qualifier}")
    if report.status == ReportStatus.BUDGET_EXHAUSTED:
        reason = report.budget.get("reason")
        out.append("status: budget_exhausted" + (f" ({reason})" if reason else ""))
    return "\n".join(out)


def emit(
    report: Report,
    fmt: OutputFormat,
    lines: Iterable[str] = (),
    code: ExitCode = ExitCode.OK,
    message: Optional[str] = None,
):
    """Print the report in the requested format and stop with the exit code"""
    if fmt == OutputFormat.JSON:
        click.echo(render_json(report))
    else:
        text = render_text(report, lines)
        if text:
            click.echo(text)
    if message:
        click.echo(message, err=True)
    logger.debug("%s finished with exit code %d", report.command, int(code))
    raise click.exceptions.Exit(int(code))


def fail(message: str, code: ExitCode = ExitCode.INVALID_INPUT):
    """Report a problem on stderr and stop"""
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(int(code))
