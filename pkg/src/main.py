"""Punto de entrada de la CLI de forjador."""

import sys
from pathlib import Path

import click

# Agregar el directorio padre al path
sys.path.append(str(Path(__file__).parent.parent))

from src.presentation.cli.commands import (
    extract_command,
    fuzz_command,
    metrics_command,
    test_connection_command,
    traindata_command,
    triage_command,
)


@click.group()
def cli():
    """Forjador - fuzzing de compiladores C/C++ a partir de features de bugs."""


# Registrar comandos
cli.add_command(extract_command, name="extract")
cli.add_command(traindata_command, name="traindata")
cli.add_command(fuzz_command, name="fuzz")
cli.add_command(triage_command, name="triage")
cli.add_command(metrics_command, name="metrics")
cli.add_command(test_connection_command, name="test-connection")


if __name__ == "__main__":
    # pylint: disable=no-value-for-parameter
    cli()
