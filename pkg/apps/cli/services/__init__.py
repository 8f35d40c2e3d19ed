"""
Command-line services.

This module exports option resolution, the command base class, manifests
and the argv dispatcher.
"""
from .command import RUNTIME_ERROR, USAGE_ERROR, LabCommand
from .dispatch import COMMANDS, USAGE, dispatch
from .manifest import write_manifest
from .options import CommandConfig, Option, read_config_file, resolve_options

__all__ = [
    'RUNTIME_ERROR',
    'USAGE_ERROR',
    'LabCommand',
    'COMMANDS',
    'USAGE',
    'dispatch',
    'write_manifest',
    'CommandConfig',
    'Option',
    'read_config_file',
    'resolve_options',
]
