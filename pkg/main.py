"""
Main entry point.

Runs one photon-numerics command and exits with its code:

    python main.py check-forms --config experiments/default.toml
"""

import sys

from src.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
