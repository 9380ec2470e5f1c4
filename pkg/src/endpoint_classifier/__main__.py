"""Run the command-line front end with ``python -m endpoint_classifier``."""

import sys

from .cli import main

sys.exit(main())
