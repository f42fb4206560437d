from decouple import config, Csv
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Development key; the toolkit serves no requests, Django only needs one to boot.
SECRET_KEY = config('US_SECRET_KEY', default='circlemaps-insecure-desk-key')

DEBUG = config('US_DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',

    'spectrum.apps.SpectrumConfig',
    'degree.apps.DegreeConfig',
    'norms.apps.NormsConfig',
    'kernels.apps.KernelsConfig',
    'pipeline.apps.PipelineAppConfig',
    'blaschke.apps.BlaschkeConfig',
    'core.apps.CoreConfig',
]

# Database
# Run history only (suite --save); the JSON report is the primary artefact.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': config('US_DB_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Logging

LOG_LEVEL = config('US_LOG_LEVEL', default='INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
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
        app: {'handlers': ['console'], 'level': LOG_LEVEL, 'propagate': False}
        for app in ('spectrum', 'degree', 'norms', 'kernels', 'pipeline', 'blaschke', 'core')
    },
}


# Workers and output

# Caps worker threads for sharded quadrature and sweeps. Results never depend on it.
US_THREADS = config('US_THREADS', default=4, cast=int)

REPORTS_DIR = Path(config('US_REPORTS_DIR', default=str(BASE_DIR / 'reports')))


# Spectrum

SPECTRUM_DEFAULT_GRID = config('US_GRID', default=4096, cast=int)
UNIMODULAR_TOL = config('US_UNIMODULAR_TOL', default=1e-8, cast=float)


# Degree

# Spectral sums further than this from an integer are reported, never fatal.
DEGREE_RESIDUAL_WARN = 0.1
# Energy sum |n||a_n|^2 over the outer 10% of the band that triggers a tail warning.
DEGREE_TAIL_WARN = 1e-6


# Norms

BMO_CENTERS = 64
BMO_WIDTHS = 16
QUADRATURE_CHUNK = 256


# Pipeline

PIPELINE_EPS_SCHEDULE = config(
    'US_EPS_SCHEDULE', default='0.125,0.0625,0.03125,0.015625',
    cast=Csv(cast=float),
)
PIPELINE_DELTA0 = config('US_DELTA0', default=0.1, cast=float)
PIPELINE_RHO_FLOOR = 0.25
PIPELINE_RHO_GATE = 0.1


# Blaschke products

BLASCHKE_MAX_GRID = 2 ** 21
R1_MAX_BANDWIDTH = 2 ** 20
R1_RADII = [0.5, 0.7, 0.9, 0.95, 0.99]
R1_MULTIPLIERS = [2, 3, 4, 8]


# Suite sizes (defaults are the acceptance sizes; lower them for quick runs)

SUITE_DEGREE_MAPS = config('US_SUITE_DEGREE_MAPS', default=100, cast=int)
SUITE_HALF_MAPS = config('US_SUITE_HALF_MAPS', default=20, cast=int)
SUITE_NORM_MAPS = config('US_SUITE_NORM_MAPS', default=10, cast=int)
SUITE_ANALYTIC_PHASES = config('US_SUITE_ANALYTIC_PHASES', default=20, cast=int)
SUITE_KERNEL_SCALES = config('US_SUITE_KERNEL_SCALES', default='64,128,256', cast=Csv(cast=int))
