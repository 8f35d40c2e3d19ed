"""
Hypergraph Django app configuration.
"""
from django.apps import AppConfig


class HypergraphConfig(AppConfig):
    """Configuration for the hypergraph application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.hypergraph'
    verbose_name = 'Hypergraph Representations'
