from pathlib import Path
from typing import Optional

import click

from src.cli.dependencies import CommandOptions, common_options
from src.cli.schemas import ExitCode, OutputFormat, Report
from src.cli.service import emit, fail, instance_digest
from src.exceptions import FormulaShapeError
from src.reductions.encoders import encode_consistency, encode_relevant_repair, encode_weak_repair
from src.reductions.oracles import brute_2qbf, brute_sat
from src.reductions.schemas import CnfFormula, QbfFormula
from src.reductions.service import dump_formula, load_formula, random_cnf, random_qbf
from src.syntax.printer import print_instance

_ENCODERS = {
    "consistency": (CnfFormula, encode_consistency),
    "weak-repair": (CnfFormula, encode_weak_repair),
    "relevant-repair": (QbfFormula, encode_relevant_repair),
}


@click.command("gen")
@click.argument("kind", type=click.Choice(sorted(_ENCODERS)))
@click.option("--formula", "formula_file", type=click.Path(dir_okay=False), default=None,
              help="Encode the formula in this JSON file instead of a random one.")
@click.option("--vars", "num_vars", type=int, default=4, show_default=True, help="CNF variables.")
@click.option("--clauses", "num_clauses", type=int, default=4, show_default=True, help="CNF clauses.")
@click.option("--x-vars", "num_x", type=int, default=2, show_default=True, help="Existential 2QBF variables.")
@click.option("--y-vars", "num_y", type=int, default=2, show_default=True, help="Universal 2QBF variables.")
@click.option("--conjuncts", "num_conjuncts", type=int, default=3, show_default=True, help="2QBF conjuncts.")
@click.option("--print-formula", is_flag=True, help="Print the formula as JSON instead of its encoding.")
@common_options
def gen(
    kind: str,
    formula_file: Optional[str],
    num_vars: int,
    num_clauses: int,
    num_x: int,
    num_y: int,
    num_conjuncts: int,
    print_formula: bool,
    options: CommandOptions,
):
    """Encode a 3-CNF or 2QBF formula as an instance file"""
    formula_type, encoder = _ENCODERS[kind]
    try:
        if formula_file is not None:
            formula = load_formula(Path(formula_file).read_text(encoding="utf-8"))
            if not isinstance(formula, formula_type):
                raise FormulaShapeError(f"'{kind}' encodes a {formula_type.__name__}, got a {formula.kind} formula")
        elif formula_type is CnfFormula:
            formula = random_cnf(options.seed, num_vars, num_clauses)
        else:
            formula = random_qbf(options.seed, num_x, num_y, num_conjuncts)
    except FormulaShapeError as error:
        fail(str(error))
    except OSError as error:
        fail(f"cannot read {formula_file}: {error.strerror}")
    except UnicodeDecodeError as error:
        fail(f"cannot read {formula_file}: not UTF-8 text (byte {error.start})")

    if print_formula:
        click.echo(dump_formula(formula), nl=False)
        return

    expected = brute_sat(formula) if isinstance(formula, CnfFormula) else brute_2qbf(formula)
    instance = encoder(formula)
    text = print_instance(instance)
    if options.fmt == OutputFormat.TEXT:
        click.echo(f"% {kind} encoding of {formula}; formula is {'true' if expected else 'false'}")
        click.echo(text, nl=False)
        return
    report = Report(
        command="gen",
        instance_digest=instance_digest(instance),
        results={"kind": kind, "formula": formula.model_dump(mode="json"), "expected": expected, "instance": text},
        budget={"seed": options.seed},
    )
    emit(report, options.fmt, code=ExitCode.OK)
