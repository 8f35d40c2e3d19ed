"""
Single entry point running one lab subcommand from an argv list.
"""
import logging
import sys
from typing import Optional, Sequence, TextIO

from django.core.management import call_command
from django.core.management.base import CommandError

from apps.cli.services.command import RUNTIME_ERROR, USAGE_ERROR

logger = logging.getLogger(__name__)

COMMANDS = ('gen', 'train', 'eval', 'sweep', 'wl', 'probe', 'enumtrain', 'reproduce')

USAGE = (
    "usage: manage.py <command> [--config FILE.ini] [--seed N] [options]\n"
    f"commands: {', '.join(COMMANDS)}\n"
    "run 'manage.py <command> --help' for the options of one command\n"
)


def dispatch(
    argv: Sequence[str],
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """
    Run exactly one subcommand.

    Returns:
        0 on success, 1 on a usage error (unknown command, unknown or
        malformed option, bad config file), 2 when the command fails.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv:
        stderr.write(USAGE)
        return USAGE_ERROR
    name, args = argv[0], list(argv[1:])
    if name in ('-h', '--help'):
        stdout.write(USAGE)
        return 0
    if name not in COMMANDS:
        stderr.write(f"unknown command '{name}'\n{USAGE}")
        return USAGE_ERROR

    try:
        call_command(name, *args, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        if exc.returncode == USAGE_ERROR:
            stderr.write(USAGE)
        return exc.returncode
    except SystemExit as exc:
        # argparse exits after printing --help
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except Exception as exc:
        logger.exception(f"{name} failed")
        stderr.write(f"{name} failed: {exc}\n")
        return RUNTIME_ERROR
    return 0
