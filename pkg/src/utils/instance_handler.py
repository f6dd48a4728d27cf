# project_root/src/utils/instance_handler.py
"""
Utilities for locating and reading SMT-LIB instances.

Supported inputs:
1. A single file: /path/to/instance.smt2
2. A directory, searched recursively for INSTANCE_EXTENSIONS
3. "-" for standard input (solve only)
"""

import os
import sys
from typing import List

from src.utils.config import INSTANCE_EXTENSIONS
from src.utils.errors import OmtBitsError
from src.utils.logger import logger


def is_instance_file(path: str) -> bool:
    return any(path.endswith(ext) for ext in INSTANCE_EXTENSIONS)


def fetch_instances(path: str) -> List[str]:
    """
    If path is a file, return just that file.
    If path is a directory, recursively gather instance files, sorted so
    that bench runs visit them in a stable order.
    """
    if os.path.isfile(path):
        return [path]
    if not os.path.isdir(path):
        raise OmtBitsError(f"'{path}' is neither a file nor a directory")

    found = []
    for root, _dirs, files in os.walk(path):
        for f in files:
            if is_instance_file(f):
                found.append(os.path.join(root, f))
    found.sort()
    logger.debug(f"Found {len(found)} instance(s) under {path}")
    return found


def read_source(path: str) -> bytes:
    """Raw bytes of an instance; "-" reads standard input."""
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise OmtBitsError(f"cannot read '{path}': {e.strerror}") from None
