import os
from pathlib import Path
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(os.path.join(BASE_DIR, '.env'))


SECRET_KEY = os.environ.get(
    'SECRET_KEY',
    'cdc-local-batch-tool-not-a-web-service'
)

DEBUG = os.environ.get('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'core',
    'graphs',
    'cycles',
    'cdc',
    'constructions',
    'harness',
]

# Local batch tool: no database, no URL routing, no middleware.
DATABASES = {}

MIDDLEWARE = []

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# -------------------
# SOLVER
# -------------------
# CDC_WORKERS wins over any --workers option given on the command line.
CDC_WORKERS = int(os.environ.get('CDC_WORKERS', 1))

CDC_MAX_CYCLE_CATALOG = int(os.environ.get('CDC_MAX_CYCLE_CATALOG', 200000))

CDC_FALLBACK_NODE_LIMIT = int(os.environ.get('CDC_FALLBACK_NODE_LIMIT', 2000000))

CDC_SLOW_TESTS = os.environ.get('CDC_SLOW_TESTS', 'False') == 'True'


# -------------------
# LOGGING
# -------------------
CDC_LOG_LEVEL = os.environ.get('CDC_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': CDC_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'graphs', 'cycles', 'cdc', 'constructions', 'harness')
    },
}
