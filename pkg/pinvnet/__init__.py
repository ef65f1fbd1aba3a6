# Load the Celery app with Django so @shared_task binds to it.
from .celery import app as celery_app

__version__ = "1.0.0"

__all__ = ('celery_app', '__version__')
