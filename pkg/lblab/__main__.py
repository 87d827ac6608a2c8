"""Run the command line with ``python -m lblab``."""

import sys

from lblab.cli import main

sys.exit(main())
