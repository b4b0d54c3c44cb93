"""Allow running the CLI as python -m aglmobius."""

import sys

from .main import main

sys.exit(main())
