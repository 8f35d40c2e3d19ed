"""
Django project configuration package.

This package contains the project settings and the Celery application
used to fan experiment runs out to workers.
"""

# This will make sure the app is always imported when
# Django starts so that shared_task will use this app.

from .celery import app as celery_app
__all__ = ('celery_app',)
