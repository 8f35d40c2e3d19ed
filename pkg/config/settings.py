"""
Django settings for the relnn-lab project.

The lab has no web surface: Django provides the ORM that stores runs, the
management commands that make up the CLI, and the test runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

from pathlib import Path

from decouple import config, Csv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Only used by django.contrib.auth hashing; nothing here is served.
SECRET_KEY = config(
    'RELNN_SECRET_KEY',
    default='relnn-lab-local-only-9dk-bfb9b5whnzvewl1vjkmcomvfil01rh2dq3e'
)

DEBUG = config('RELNN_DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('RELNN_ALLOWED_HOSTS', default='localhost', cast=Csv())


# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',

    # Third party apps
    'rest_framework',

    # My apps
    'apps.tensor_core',
    'apps.hypergraph',
    'apps.relnn',
    'apps.oracles',
    'apps.datasets',
    'apps.experiments',
    'apps.cli',
]

MIDDLEWARE = [
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]


# Database
# Runs, evaluation records and run logs live in a local sqlite file.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / config('RELNN_DB_NAME', default='relnn.sqlite3'),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Default primary key field type

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging

RELNN_LOG_LEVEL = config('RELNN_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'lab': {
            'format': '{levelname} {asctime} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'lab',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': RELNN_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Lab configuration

RELNN_OUTPUT_DIR = Path(
    config('RELNN_OUTPUT_DIR', default=str(BASE_DIR / 'runs'))
)

# Caps how many runs `reproduce` and `sweep` keep in flight at once.
RELNN_WORKERS = config('RELNN_WORKERS', default=1, cast=int)

# Desk-scale reproduction tests take CPU minutes per cell.
RELNN_RUN_SLOW_TESTS = config('RELNN_RUN_SLOW_TESTS', default=False, cast=bool)

RELNN = {
    'LEARNING_RATE': 3e-4,
    'DECAY_EPOCHS': (50, 80),
    'DECAY_FACTOR': 0.1,
    'EPOCHS': 100,
    'SPLIT_SIZES': (800, 100, 300),
    'ACCUMULATE': 16,
    'FPMEAN_DECIMALS': 2,
    'HIDDEN_WIDTH': 128,
    'SWEEP_SIZES': (10, 20, 30, 40, 50, 60, 70, 80),
}


# Celery configuration
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='redis://localhost:6379/0')
CELERY_RESULT_BACKEND = config(
    'CELERY_RESULT_BACKEND', default='redis://localhost:6379/0'
)
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
CELERY_TASK_TRACK_STARTED = True
CELERY_TASK_TIME_LIMIT = 6 * 60 * 60  # one desk-scale cell can take hours
CELERY_WORKER_CONCURRENCY = RELNN_WORKERS

# Without a broker the tasks run inline in the calling process.
CELERY_TASK_ALWAYS_EAGER = config('RELNN_CELERY_EAGER', default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True
