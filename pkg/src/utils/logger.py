# project_root/src/utils/logger.py
"""
The application logger and its CLI setup.

Log records go to stderr: stdout is reserved for the SMT-LIB result lines
(`sat`, `(objectives ...)`, `smt_calls=...`) that the harness parses.
Library code only calls `logger`; `setup_logger` runs once per CLI
invocation.
"""

import logging
import sys
from typing import Optional, TextIO

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s - %(message)s"
HANDLER_NAME = "omtbits-stderr"

logger = logging.getLogger("omtbits")


def setup_logger(verbose: bool = False, quiet: bool = False,
                 stream: Optional[TextIO] = None) -> logging.Logger:
    """Route `omtbits` records to `stream` (stderr by default) at the level -v / -q ask for."""
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO

    for handler in list(logger.handlers):
        if handler.get_name() == HANDLER_NAME:
            logger.removeHandler(handler)
    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    return logger
