"""
LOGGING SETUP
=============

Modules log through `logging.getLogger(__name__)`. The CLI calls
`configure_logging` once; `debug=True` turns on the per-stage messages
the sweep controller and the acceptance suite emit.

Logs go to stderr. stdout and the CSV files stay byte-stable.
"""

import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def configure_logging(debug: bool = False) -> None:
    """Install a single stderr handler on the `src` logger tree."""
    root = logging.getLogger("src")
    root.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if debug else logging.WARNING)
    root.propagate = False
