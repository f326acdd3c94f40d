import click

from src.config import configure_logging, settings
from src.reductions import router as reductions_router
from src.repairs import router as repairs_router
from src.syntax import router as syntax_router
from src.views import router as views_router
from src.worlds import router as worlds_router


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option("1.0.0", prog_name=settings.PROJECT_NAME)
def cli():
    """Indefinite deductive databases: worlds, truth values and view-update repairs"""
    configure_logging()


# Register commands
cli.add_command(views_router.check)
cli.add_command(views_router.eval_facts)
cli.add_command(worlds_router.worlds)
cli.add_command(repairs_router.repairs)
cli.add_command(repairs_router.classify)
cli.add_command(reductions_router.gen)
cli.add_command(syntax_router.fmt)


if __name__ == "__main__":
    cli()
