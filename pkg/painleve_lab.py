# -*- coding: utf-8 -*-
"""
Main entry point for painleve-lab.
Sets up the import path and logging, then hands the arguments to src.cli.

    python painleve_lab.py test --builtin hh --lambda 1 --C -1
"""

import logging
import os
import sys

# --- Setup Project Root Path ---
project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '.'))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

try:
    from src.cli import run
    from src.settings import LOG_FORMAT, log_level
except ImportError as e:
    sys.stderr.write(f"Fatal Error: Could not import from src. Check PYTHONPATH and file location. Error: {e}\n")
    sys.exit(2)

# --- Configure Logging ---
logging.basicConfig(level=log_level(), format=LOG_FORMAT, stream=sys.stderr)
logger = logging.getLogger(__name__)


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
