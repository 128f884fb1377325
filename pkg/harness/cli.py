"""Programmatic entry point: run one harness subcommand and return its exit code."""
import sys
from typing import Sequence

from django.core.management import call_command
from django.core.management.base import CommandError

SUBCOMMANDS = ('gen', 'mincdc', 'count', 'enumerate', 'construct', 'verify', 'table', 'selfcheck')


def cli_run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """
    argv is a subcommand followed by its arguments, as on the command line.

    Returns 0 on success (including "no CDC exists" answers), 2 for an
    unknown subcommand and 1 when the command fails.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] not in SUBCOMMANDS:
        stderr.write(f'usage: <{"|".join(SUBCOMMANDS)}> [options]\n')
        return 2
    try:
        call_command(argv[0], *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f'{exc}\n')
        return 1
    return 0
