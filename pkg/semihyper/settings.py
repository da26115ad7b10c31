"""
Django settings for the semihyper project.

The project hosts no web surface: Django provides configuration, logging,
the management-command CLI and the test runner for the engine apps.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'django-insecure-semihyper-fallback')

DEBUG = os.getenv('DJANGO_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = os.getenv('DJANGO_ALLOWED_HOSTS', 'localhost').split(',')

# Application definition
LOCAL_APPS = [
    'ratmeasure',
    'shg_core',
    'constructions',
    'freeprod',
    'cli',
]

INSTALLED_APPS = LOCAL_APPS

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# =====================================
# ENGINE SETTINGS
# =====================================
SHG_SETTINGS = {
    # parse_structure runs verify_axioms unless --no-check is given
    'VERIFY_ON_LOAD': os.getenv('SHG_VERIFY_ON_LOAD', 'True') == 'True',
    # exhaustive checks above this size still run, but are logged as slow
    'DESK_SCALE_ELEMENTS': int(os.getenv('SHG_DESK_SCALE_ELEMENTS', '30')),
    # default word-length truncation for free / words / lift
    'DEFAULT_MAX_LEN': int(os.getenv('SHG_DEFAULT_MAX_LEN', '2')),
    # largest structure searched by brute-force isomorphism
    'ISOMORPHISM_SEARCH_LIMIT': int(os.getenv('SHG_ISOMORPHISM_SEARCH_LIMIT', '8')),
    # entries kept by the per-instance word convolution and lift memos
    'WORD_CACHE_SIZE': int(os.getenv('SHG_WORD_CACHE_SIZE', '4096')),
}

# =====================================
# LOGGING CONFIGURATION
# =====================================
LOGS_DIR = BASE_DIR / 'logs'
if not LOGS_DIR.exists():
    LOGS_DIR.mkdir(parents=True, exist_ok=True)

LOG_LEVEL = os.getenv('SHG_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': 'DEBUG',
            'class': 'logging.FileHandler',
            'filename': LOGS_DIR / 'semihyper.log',
            'formatter': 'verbose',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': False,
        },
        **{
            app: {
                'handlers': ['file', 'console'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for app in LOCAL_APPS
        },
    },
}
