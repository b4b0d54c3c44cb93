# Configuration module

"""Configuration management for aglmobius.

This module loads environment variables from the .env file at the repository
root and exposes them as typed module-level settings.
"""

import os
from pathlib import Path
from typing import Optional

try:
    from dotenv import load_dotenv
    # Load environment variables from .env file
    env_path = Path(__file__).parent.parent / '.env'
    load_dotenv(dotenv_path=env_path)
except ImportError:
    # python-dotenv not installed, fall back to system environment variables
    pass


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ('true', '1', 'yes', 'on')


# ----------------------------------------------------------------------------
# Size caps
# ----------------------------------------------------------------------------

FIELD_SIZE_CAP: int = int(os.getenv('AGL_FIELD_SIZE_CAP', str(2 ** 20)))
CATALOG_MAX_Q: int = int(os.getenv('AGL_CATALOG_MAX_Q', '1024'))
CONTAINMENT_MATRIX_MAX_Q: int = int(os.getenv('AGL_CONTAINMENT_MATRIX_MAX_Q', '128'))
ORACLE_MAX_SUBGROUPS: int = int(os.getenv('AGL_ORACLE_MAX_SUBGROUPS', '1500'))
CROSSCUT_MAX_SIZE: int = int(os.getenv('AGL_CROSSCUT_MAX_SIZE', '25'))
CLOSURE_MAX_Q: int = int(os.getenv('AGL_CLOSURE_MAX_Q', '9'))
EULERIAN_BRUTE_MAX_Q: int = int(os.getenv('AGL_EULERIAN_BRUTE_MAX_Q', '7'))
SUBSPACE_CHECK_MAX_Q: int = int(os.getenv('AGL_SUBSPACE_CHECK_MAX_Q', '32'))

# ----------------------------------------------------------------------------
# Cache
# ----------------------------------------------------------------------------

CACHE_DIR: Optional[str] = os.getenv('AGL_CACHE_DIR', '.agl_cache')
CACHE_SCHEMA_VERSION: int = 1

# ----------------------------------------------------------------------------
# Runtime
# ----------------------------------------------------------------------------

JOBS: int = int(os.getenv('AGL_JOBS', '1'))
LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'WARNING')
LOG_TO_FILE: bool = _env_bool('LOG_TO_FILE', 'false')

# ----------------------------------------------------------------------------
# Application Settings
# ----------------------------------------------------------------------------

APP_NAME: str = os.getenv('APP_NAME', 'aglmobius')
APP_VERSION: str = os.getenv('APP_VERSION', '1.0.0')
