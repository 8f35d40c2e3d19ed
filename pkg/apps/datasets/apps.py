"""
Datasets Django app configuration.
"""
from django.apps import AppConfig


class DatasetsConfig(AppConfig):
    """Configuration for the datasets application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.datasets'
    verbose_name = 'Synthetic Datasets'
