"""
Tensor core Django app configuration.
"""
from django.apps import AppConfig


class TensorCoreConfig(AppConfig):
    """Configuration for the tensor core application."""
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.tensor_core'
    verbose_name = 'Tensor Core'
