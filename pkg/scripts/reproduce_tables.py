#!/usr/bin/env python3
"""Reproduce the published accuracy tables and print pass/fail per cell.

Thin wrapper over ``tempint tables``; exits 0 if every cell matches its
published value within tolerance, 5 otherwise.
"""

import sys

from tempint.cli import main

if __name__ == "__main__":
    sys.exit(main(["tables"] + sys.argv[1:]))
