"""
Django settings for the kfano project.

The project has no web surface: Django provides the settings layer, the
management-command CLI, the run history database and the test runner.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; the CLI never signs anything.
SECRET_KEY = os.getenv('SECRET_KEY', 'kfano-local-cli-key')

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "rest_framework",
    "exactnum",
    "polyforms",
    "divgeom",
    "valuations",
    "bundle_delta",
    "pipeline",
]


# Database
# Only the certification run history lives here.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": os.getenv('KFANO_DB_PATH', str(BASE_DIR / "db.sqlite3")),
    },
}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Django REST Framework configuration (serializers only)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNAUTHENTICATED_USER': None,
}


# Certification pipeline settings
# Rationals are kept as "p/q" strings and parsed by the pipeline.
KFANO = {
    'FAMILY_A_C': os.getenv('KFANO_FAMILY_A_C', '3/17'),
    'FAMILY_B_C': os.getenv('KFANO_FAMILY_B_C', '2/9'),
    'GENERIC_S': os.getenv('KFANO_GENERIC_S', '2'),
    'CONCURRENT': os.getenv('KFANO_CONCURRENT', 'True').lower() == 'true',
    'PERSIST_RUNS': os.getenv('KFANO_PERSIST_RUNS', 'False').lower() == 'true',
}


# Logging
LOG_LEVEL = os.getenv('KFANO_LOG_LEVEL', 'WARNING').upper()

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
        'level': LOG_LEVEL,
    },
}
