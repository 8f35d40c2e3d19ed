"""
CLI Django app configuration.

This module configures the CLI app whose management commands are the
lab's command-line surface.
"""
from django.apps import AppConfig


class CliConfig(AppConfig):
    """Configuration for the CLI application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.cli'
    verbose_name = 'Command Line'
