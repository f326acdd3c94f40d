import functools
from pathlib import Path
from typing import Any, Dict, Optional

import click
from pydantic import BaseModel

from src.cli.schemas import ExitCode, OutputFormat
from src.cli.service import fail
from src.config import configure_logging, settings
from src.syntax.parser import try_parse_instance
from src.syntax.schemas import Instance
from src.updates.schemas import ActionTarget


class CommandOptions(BaseModel):
    """Budget and output flags shared by every command"""
    fresh: Optional[int] = None
    universe_cap: int = settings.WORLD_UNIVERSE_CAP
    max_update_size: int = settings.MAX_UPDATE_SIZE
    max_results: int = settings.MAX_RESULTS
    timeout: Optional[float] = settings.SEARCH_TIMEOUT_SECONDS
    seed: int = 0
    fmt: OutputFormat = OutputFormat.TEXT
    verbose: bool = False
    jobs: int = 1
    with_exceptions: bool = False

    def domain_budget(self):
        domain = settings.default_domain_budget()
        return domain.model_copy(update={"world_universe_cap": self.universe_cap, "fresh_symbol_count": self.fresh})

    def search_budget(self):
        budget = settings.default_search_budget()
        targets = (ActionTarget.D, ActionTarget.E) if self.with_exceptions else (ActionTarget.D,)
        update = {
            "max_update_size": self.max_update_size,
            "max_results": self.max_results,
            "deadline_seconds": self.timeout,
            "domain": self.domain_budget(),
            "targets": targets,
        }
        if self.fresh is not None:
            update["fresh_constants"] = self.fresh
        return budget.model_copy(update=update)

    def summary(self) -> Dict[str, Any]:
        return {
            "fresh": self.fresh,
            "universe_cap": self.universe_cap,
            "max_update_size": self.max_update_size,
            "max_results": self.max_results,
            "timeout": self.timeout,
            "with_exceptions": self.with_exceptions,
        }


_OPTIONS = [
    click.option("--fresh", type=click.IntRange(min=0), default=None,
                 help="Fresh constants added to the domain (default: derived from the instance)."),
    click.option("--universe-cap", type=click.IntRange(min=1), default=settings.WORLD_UNIVERSE_CAP,
                 show_default=True, help="Largest number of optional atoms a world enumeration may range over."),
    click.option("--max-update-size", type=click.IntRange(min=1), default=settings.MAX_UPDATE_SIZE,
                 show_default=True, help="Largest update the repair search tries."),
    click.option("--max-results", type=click.IntRange(min=1), default=settings.MAX_RESULTS,
                 show_default=True, help="Stop after this many weak repairs."),
    click.option("--timeout", type=click.FloatRange(min=0, min_open=True), default=settings.SEARCH_TIMEOUT_SECONDS,
                 help="Repair search deadline in seconds."),
    click.option("--seed", type=int, default=0, show_default=True, help="Seed for generated formulas."),
    click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="text",
                 show_default=True),
    click.option("--verbose", "-v", is_flag=True, help="Log search progress to stderr."),
    click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes; only 1 is supported."),
    click.option("--with-exceptions", is_flag=True, help="Let repairs insert and delete exception facts."),
]

_NAMES = ["fresh", "universe_cap", "max_update_size", "max_results", "timeout", "seed", "fmt", "verbose",
          "jobs", "with_exceptions"]


def common_options(command):
    """Add the shared flags and hand the command a CommandOptions instead"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        values = {name: kwargs.pop(name) for name in _NAMES}
        options = CommandOptions(**values)
        if options.verbose:
            configure_logging("DEBUG")
        if options.jobs != 1:
            fail(f"--jobs {options.jobs} is not supported; evaluation is single-process")
        return command(*args, options=options, **kwargs)

    for option in reversed(_OPTIONS):
        wrapper = option(wrapper)
    return wrapper


def load_instance(path: str) -> Instance:
    """Parse and validate an instance file; diagnostics go to stderr with exit code 2"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as error:
        fail(f"cannot read {path}: {error.strerror}")
    except UnicodeDecodeError as error:
        fail(f"cannot read {path}: not UTF-8 text (byte {error.start})")
    instance, diagnostics = try_parse_instance(text)
    if instance is None:
        for diagnostic in diagnostics:
            click.echo(diagnostic.render(path), err=True)
        raise click.exceptions.Exit(int(ExitCode.INVALID_INPUT))
    return instance
