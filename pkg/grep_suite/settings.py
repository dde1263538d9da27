"""
Django settings for grep_suite project.
"""

import os
from pathlib import Path

# Build paths inside the project
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-change-this-in-production-abc123xyz')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DJANGO_DEBUG', '1') == '1'


# Application definition
INSTALLED_APPS = [
    # Third-party apps
    'rest_framework',

    # Local apps
    'rootextraction',
]

# Commands and tests never touch a database
DATABASES = {}


# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'rootextraction': {
            'handlers': ['console'],
            'level': os.environ.get('ROOT_EXTRACTION_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}


# Root extraction configuration
ROOT_EXTRACTION = {
    # Randomized searches
    'BASIS_RETRY_LIMIT': 256,
    'PAIRING_RETRY_LIMIT': 32,
    'COSET_SEARCH_LIMIT': 4096,

    # Parameter generation
    'PRIMALITY_ROUNDS': 64,
    'F_MAX': 10000,

    # Enumeration guards for the model oracles
    'BRUTE_FORCE_LIMIT': 32,
    'EXISTENCE_TABLE_LIMIT': 16,

    # Self-test
    'GOLDEN_DIR': BASE_DIR / 'rootextraction' / 'golden',
    'QUICK_SELFTEST_SECONDS': 10,
}
