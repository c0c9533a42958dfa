#!/usr/bin/env python3
"""
Arithmetic laboratory launcher
Runs the arithlab command line from a source checkout without installing it
"""

import sys
import os

# Add project root to path if needed
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from arithlab_toolkit.cli import main


if __name__ == "__main__":
    # Budgets come from .lab_env next to this script unless --env-file says otherwise
    env_file = os.path.join(project_root, ".lab_env")
    argv = sys.argv[1:]
    if os.path.exists(env_file) and "--env-file" not in argv:
        argv = ["--env-file", env_file] + argv
    sys.exit(main(argv))
