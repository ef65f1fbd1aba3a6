"""
Django settings for the pinvnet project.

Experiment defaults live in the PINVNET dict at the bottom; every entry can be
overridden from the environment (a .env file is loaded by manage.py) and, per
run, by a YAML config file or command-line flags.
"""

from pathlib import Path
import os
import sys

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-default-key-for-dev-only')

DEBUG = os.environ.get('DEBUG', 'True') == 'True'

ALLOWED_HOSTS = os.environ.get('ALLOWED_HOSTS', 'localhost').split(',')


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    "rest_framework",
    "django_celery_results",
    "numerics",
    "network",
    "datasets",
    "stats",
    "experiments",
    "runner",
]


# Database
# Results are files; the database only holds the run audit log and Celery results.

if 'test' in sys.argv:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': ':memory:',
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': os.environ.get('DB_NAME', str(BASE_DIR / 'pinvnet.sqlite3')),
        }
    }


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.environ.get('LOG_LEVEL', 'INFO'),
    },
}


# Celery Configuration
CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = 'django-db'
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_BROKER_CONNECTION_RETRY_ON_STARTUP = (
    os.environ.get('CELERY_BROKER_CONNECTION_RETRY_ON_STARTUP', 'False') == 'True'
)
CELERY_BROKER_CONNECTION_TIMEOUT = int(os.environ.get('CELERY_BROKER_CONNECTION_TIMEOUT', 2))
CELERY_TASK_TRACK_STARTED = True
# Full 100-trial sweeps over the larger datasets run for hours.
CELERY_TASK_TIME_LIMIT = 12 * 60 * 60
CELERY_TASK_SOFT_TIME_LIMIT = 11 * 60 * 60


# Experiment defaults

def _float_list(value, default):
    if not value:
        return default
    return [float(item) for item in value.split(',')]


PINVNET = {
    'TRIALS': int(os.environ.get('PINVNET_TRIALS', 100)),
    'SPLIT_FRACTIONS': _float_list(os.environ.get('PINVNET_SPLIT_FRACTIONS'), [0.5, 0.25, 0.25]),
    'LAMBDA_GRID': _float_list(
        os.environ.get('PINVNET_LAMBDA_GRID'),
        [10.0 ** exponent for exponent in range(-14, 0)],
    ),
    'CRITICAL_WINDOW_FRACTION': float(os.environ.get('PINVNET_CRITICAL_WINDOW_FRACTION', 0.25)),
    'FAILURE_BUDGET': float(os.environ.get('PINVNET_FAILURE_BUDGET', 0.10)),
    'CONFIDENCE': float(os.environ.get('PINVNET_CONFIDENCE', 0.95)),
    'EQUAL_VAR': os.environ.get('PINVNET_EQUAL_VAR', 'False') == 'True',
    'WORKERS': int(os.environ.get('PINVNET_WORKERS', 1)),
    'BASE_SEED': int(os.environ.get('PINVNET_BASE_SEED', 0)),
    'OUTPUT_DIR': os.environ.get('PINVNET_OUTPUT_DIR', str(BASE_DIR / 'results')),
    'DATA_DIR': os.environ.get('PINVNET_DATA_DIR', str(BASE_DIR / 'data')),
    'TIMING': os.environ.get('PINVNET_TIMING', 'False') == 'True',
    'M_STEP': int(os.environ.get('PINVNET_M_STEP', 1)),
}
