"""
Command options from flags and INI config files.

A command declares its options once. Each option's value comes from its
flag when given, otherwise from the [settings] section of the --config
file, otherwise from the declared default. Flag and file values are both
strings and go through the same parser.
"""
import configparser
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional

from decouple import Csv, RepositoryIni, strtobool

from apps.cli.exceptions import ConfigFileError, OptionError

logger = logging.getLogger(__name__)

int_list = Csv(cast=int, post_process=tuple)
str_list = Csv(post_process=tuple)


def boolean(value: str) -> bool:
    return bool(strtobool(value))


def optional_str(value: str) -> Optional[str]:
    return value or None


@dataclass(frozen=True)
class Option:
    """
    One command option.

    Attributes:
        default: Value when neither flag nor file sets it.
        parse: String -> value.
        help: Help text for the flag.
        required: Whether a value must come from the flag or the file.
        switch: A flag without a value that sets True.
        choices: Allowed parsed values.
    """
    default: Any = None
    parse: Callable[[str], Any] = str
    help: str = ''
    required: bool = False
    switch: bool = False
    choices: Optional[tuple] = None

    def flag(self, name: str) -> str:
        return '--' + name.replace('_', '-')


def read_config_file(path: Optional[str]) -> Dict[str, str]:
    """
    The [settings] section of an INI file, keys normalized to snake_case.

    Raises:
        ConfigFileError: If the file is missing or not valid INI.
    """
    if not path:
        return {}
    if not Path(path).is_file():
        raise ConfigFileError(f"config file {path} does not exist")
    try:
        repository = RepositoryIni(path)
    except configparser.Error as e:
        raise ConfigFileError(f"config file {path} is not valid INI: {e}") from e
    section = RepositoryIni.SECTION
    if not repository.parser.has_section(section):
        raise ConfigFileError(f"config file {path} has no [{section}] section")
    return {
        key.replace('-', '_'): repository[key]
        for key in repository.parser.options(section)
    }


def resolve_options(
    options: Mapping[str, Option], flags: Mapping[str, Any], file_values: Mapping[str, str]
) -> Dict[str, Any]:
    """
    Merge flags over file values over defaults.

    Raises:
        ConfigFileError: If the file names an option the command does not have.
        OptionError: If a value does not parse, is not an allowed choice, or a
            required option has no value.
    """
    unknown = sorted(set(file_values) - set(options))
    if unknown:
        raise ConfigFileError(f"config file sets unknown options {unknown}")

    resolved = {}
    for name, option in options.items():
        raw = flags.get(name)
        if raw is None or (option.switch and raw is False):
            raw = file_values.get(name)
        if raw is None:
            value = option.default
        elif option.switch and isinstance(raw, bool):
            value = raw
        else:
            parse = boolean if option.switch else option.parse
            try:
                value = parse(str(raw))
            except (TypeError, ValueError) as e:
                raise OptionError(f"{option.flag(name)}: cannot parse {raw!r} ({e})") from e
        if option.required and value is None:
            raise OptionError(f"{option.flag(name)} is required (flag or config file)")
        if option.choices is not None and value is not None and value not in option.choices:
            raise OptionError(
                f"{option.flag(name)}: {value!r} is not one of {list(option.choices)}"
            )
        resolved[name] = value
    return resolved


@dataclass
class CommandConfig:
    """
    A fully resolved command invocation.

    Attributes:
        command: Subcommand name.
        options: Option name -> resolved value.
        seed: Master seed all randomness derives from.
        config_file: The --config file, if any.
    """
    command: str
    options: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    config_file: Optional[str] = None

    def __getitem__(self, name: str) -> Any:
        return self.options[name]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'seed': self.seed,
            'config_file': self.config_file,
            'options': {name: _json_safe(value) for name, value in sorted(self.options.items())},
        }


def _json_safe(value: Any) -> Any:
    if isinstance(value, (tuple, list)):
        return [_json_safe(item) for item in value]
    if isinstance(value, Path):
        return str(value)
    return value
