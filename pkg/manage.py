#!/usr/bin/env python3
"""Command-line entry point: lab subcommands plus Django's administrative tasks."""
import os
import sys


def main():
    """Run a lab subcommand or an administrative task."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        import django
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc

    django.setup()
    from apps.cli.services.dispatch import COMMANDS, dispatch

    if len(sys.argv) > 1 and sys.argv[1] in COMMANDS:
        sys.exit(dispatch(sys.argv[1:]))
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
