"""
Base class of the lab's management commands.
"""
import logging
from typing import Dict

from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError

from apps.cli.exceptions import CliError
from apps.cli.services.options import (
    CommandConfig,
    Option,
    read_config_file,
    resolve_options,
)

logger = logging.getLogger(__name__)

USAGE_ERROR = 1
RUNTIME_ERROR = 2

SEED = Option(default=0, parse=int, help='Master seed; all randomness derives from it.')


class LabCommand(BaseCommand):
    """
    A command whose options may come from flags or a --config INI file.

    Subclasses declare `lab_options` and implement `run(config)`. Option and
    config-file problems exit with 1; any failure while running exits with 2.
    Commands that record runs set `uses_database` and get the run tables
    migrated first.
    """
    lab_options: Dict[str, Option] = {}
    uses_database = False

    def all_options(self) -> Dict[str, Option]:
        return {**self.lab_options, 'seed': SEED}

    def add_arguments(self, parser):
        parser.add_argument('--config', help='INI file with a [settings] section; flags win.')
        for name, option in self.all_options().items():
            if option.switch:
                parser.add_argument(
                    option.flag(name), dest=name, action='store_const', const=True,
                    default=None, help=option.help,
                )
            else:
                parser.add_argument(option.flag(name), dest=name, default=None, help=option.help)

    def resolve(self, flags) -> CommandConfig:
        config_file = flags.get('config')
        try:
            values = resolve_options(self.all_options(), flags, read_config_file(config_file))
        except CliError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc
        seed = values.pop('seed')
        return CommandConfig(
            command=self.command_name(), options=values, seed=seed, config_file=config_file
        )

    def command_name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **flags):
        config = self.resolve(flags)
        try:
            if self.uses_database:
                call_command('migrate', verbosity=0, interactive=False)
            self.run(config)
        except CommandError:
            raise
        except Exception as exc:
            logger.exception(f"{config.command} failed")
            raise CommandError(f"{config.command} failed: {exc}", returncode=RUNTIME_ERROR) from exc

    def run(self, config: CommandConfig) -> None:
        raise NotImplementedError

    def success(self, message: str) -> None:
        self.stdout.write(self.style.SUCCESS(message))
