#!/usr/bin/env python3
"""
euler-mod4 - Cycle Types mod 4 of Euler Graphs

Launcher for running the command line from a source checkout without
installing the package. Equivalent to the ``euler-mod4`` console script.

Usage:
    python main.py families
    python main.py generate gts --t 4 --s 3 --out g43.txt
    python main.py classify g43.txt --json
"""

from euler_mod4.cli import main

if __name__ == "__main__":
    main()
