"""Celery app for queued sweeps; workers start with ``celery -A pinvnet worker``."""
import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'pinvnet.settings')

app = Celery('pinvnet')

# CELERY_* keys in settings configure the app.
app.config_from_object('django.conf:settings', namespace='CELERY')

# Picks up runner.tasks.
app.autodiscover_tasks()
