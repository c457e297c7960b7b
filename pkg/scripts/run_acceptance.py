"""Run only the acceptance criteria and print their PASS/FAIL lines.

    python3 scripts/run_acceptance.py [extra pytest args]
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(pytest.main([str(ROOT / "tests" / "test_acceptance.py"), "-m", "acceptance",
                          "-q", "-p", "no:cacheprovider", *sys.argv[1:]]))
