"""
Django settings for ShadowLab.

The project has no web surface: settings configure the analyzer apps,
the verification archive database, logging and the exploration budgets.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

# =============================================================================
# CORE SETTINGS
# =============================================================================

SECRET_KEY = os.getenv(
    'SECRET_KEY',
    'shadowlab-local-only-not-used-for-signing'
)

DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 'yes')

ALLOWED_HOSTS = []

# =============================================================================
# APPLICATION DEFINITION
# =============================================================================

INSTALLED_APPS = [
    'systems.apps.SystemsConfig',
    'lattice.apps.LatticeConfig',
    'shadowing.apps.ShadowingConfig',
    'expansivity.apps.ExpansivityConfig',
    'multiplicity.apps.MultiplicityConfig',
    'generators.apps.GeneratorsConfig',
    'harness.apps.HarnessConfig',
]

MIDDLEWARE = []

# =============================================================================
# DATABASE (verification archive)
# =============================================================================

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('SHADOWLAB_DB_PATH', str(BASE_DIR / 'db.sqlite3')),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

USE_TZ = True
TIME_ZONE = 'UTC'

# =============================================================================
# ANALYZER CONFIGURATION
# =============================================================================

SHADOWLAB = {
    # Explored survivor states per decision before BudgetExceededError
    'STATE_BUDGET': int(os.getenv('SHADOWLAB_STATE_BUDGET', '5000000')),
    # Explored tuple states per counting / n-expansivity query
    'TUPLE_BUDGET': int(os.getenv('SHADOWLAB_TUPLE_BUDGET', '5000000')),
    'RANDOM_POINTS_CAP': int(os.getenv('SHADOWLAB_RANDOM_POINTS_CAP', '10')),
    # How many pair-lattice values the default epsilon policy samples
    'EPS_POLICY_CAP': int(os.getenv('SHADOWLAB_EPS_POLICY_CAP', '12')),
    'COUNT_CAP': int(os.getenv('SHADOWLAB_COUNT_CAP', '4')),
}

# =============================================================================
# LOGGING
# =============================================================================

LOG_FILE = os.getenv('SHADOWLAB_LOG_FILE')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': os.getenv('SHADOWLAB_LOG_LEVEL', 'WARNING'),
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.getenv('DJANGO_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}

if LOG_FILE:
    LOGGING['handlers']['file'] = {
        'class': 'logging.FileHandler',
        'filename': LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['root']['handlers'].append('file')
