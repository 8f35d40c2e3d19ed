"""
Experiments Django app configuration.

This module configures the Experiments app that trains, evaluates and
probes relational networks and records every run.
"""
from django.apps import AppConfig


class ExperimentsConfig(AppConfig):
    """Configuration for the Experiments application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.experiments'
    verbose_name = 'Experiment Runs'
