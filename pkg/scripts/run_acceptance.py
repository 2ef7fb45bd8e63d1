#!/usr/bin/env python3
"""Run the acceptance suite with one printed pass/fail line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    raise SystemExit(
        subprocess.call(
            [sys.executable, "-m", "pytest", "tests/test_acceptance.py", "-v", "-s"],
            cwd=ROOT,
        )
    )
