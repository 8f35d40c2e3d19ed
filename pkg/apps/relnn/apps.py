"""
Relational network models Django app configuration.
"""
from django.apps import AppConfig


class RelnnConfig(AppConfig):
    """Configuration for the relational network models application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.relnn'
    verbose_name = 'Relational Networks'
