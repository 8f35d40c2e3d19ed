"""
Graph oracles Django app configuration.
"""
from django.apps import AppConfig


class OraclesConfig(AppConfig):
    """Configuration for the graph oracles application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.oracles'
    verbose_name = 'Graph Oracles'
