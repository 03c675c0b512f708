from decouple import config

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='django-insecure-bellkit-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # Third party apps
    'rest_framework',

    # Local apps
    'behaviors',
    'nosignalling',
    'determinization',
    'local_polytope',
    'quantum',
    'monte_carlo',
    'cli',
]

# Everything is computed in memory; there is nothing to persist.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# JSON documents are rendered and parsed by the REST framework codecs
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_AUTHENTICATION_CLASSES': (),
    'DEFAULT_PERMISSION_CLASSES': (),
    'COMPACT_JSON': False,
    'UNICODE_JSON': False,
    'STRICT_JSON': True,
}

# Numerical defaults shared by every app
BELLKIT = {
    'FLOAT_TOLERANCE': config('BELLKIT_FLOAT_TOLERANCE', default=1e-9, cast=float),
    'NEGATIVITY_FLOOR': config('BELLKIT_NEGATIVITY_FLOOR', default=1e-12, cast=float),
    'STRATEGY_CAP': config('BELLKIT_STRATEGY_CAP', default=10 ** 6, cast=int),
    'MAX_DENOMINATOR': config('BELLKIT_MAX_DENOMINATOR', default=10 ** 6, cast=int),
    'DEFAULT_SEED': config('BELLKIT_DEFAULT_SEED', default=0, cast=int),
    'DEFAULT_SAMPLES': config('BELLKIT_DEFAULT_SAMPLES', default=10 ** 5, cast=int),
    'Z_THRESHOLD': config('BELLKIT_Z_THRESHOLD', default=5.0, cast=float),
    'HERMITIAN_TOLERANCE': config('BELLKIT_HERMITIAN_TOLERANCE', default=1e-10, cast=float),
    'PSD_FLOOR': config('BELLKIT_PSD_FLOOR', default=-1e-9, cast=float),
    'SAMPLER_LANES': config('BELLKIT_SAMPLER_LANES', default=1024, cast=int),
}

LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

# Standard output carries JSON results, so log records go to stderr.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        }
        for app in [
            'behaviors',
            'nosignalling',
            'determinization',
            'local_polytope',
            'quantum',
            'monte_carlo',
            'cli',
        ]
    },
}
