import click

from src.cli.dependencies import CommandOptions, common_options, load_instance
from src.cli.schemas import OutputFormat, Report
from src.cli.service import emit, instance_digest
from src.syntax.printer import print_instance
from src.syntax.service import check_acyclic


@click.command("fmt")
@click.argument("file", type=click.Path(dir_okay=False))
@common_options
def fmt(file: str, options: CommandOptions):
    """Print FILE in canonical form"""
    instance = load_instance(file)
    text = print_instance(instance)
    if options.fmt == OutputFormat.TEXT:
        click.echo(text, nl=False)
        return
    _, dependencies = check_acyclic(instance.view)
    report = Report(
        command="fmt",
        instance_digest=instance_digest(instance),
        results={
            "instance": text,
            "program_class": dependencies.program_class.value,
            "cyclic_components": dependencies.cyclic_components,
        },
    )
    emit(report, options.fmt)
