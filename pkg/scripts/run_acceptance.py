#!/usr/bin/env python3
"""Run the acceptance gate: every criterion prints one PASS/FAIL line."""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    code = subprocess.call([sys.executable, "-m", "pytest", "-s", "-v",
                            str(ROOT / "tests" / "test_acceptance.py")] + sys.argv[1:],
                           cwd=ROOT)
    sys.exit(code)
