"""
Celery configuration module.

Experiment runs are Celery tasks so `reproduce` and `sweep` can fan them
out to workers. With CELERY_TASK_ALWAYS_EAGER (the default) they run
inline in the calling process.
"""
import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')

app = Celery('relnn')

# Load config from Django settings with CELERY_ prefix
app.config_from_object('django.conf:settings', namespace='CELERY')

# Auto-discover tasks in all registered Django apps
app.autodiscover_tasks()
