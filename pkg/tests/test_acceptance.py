"""One test per acceptance criterion, each printing a PASS/FAIL line.

Every criterion runs in a fresh interpreter so its runtime is measured
without caches warmed by other tests.
"""

from __future__ import annotations

import json
import re
import subprocess
import sys

import pytest

from hamcodes.acceptance import TIME_LIMITS


def run_isolated(number: int) -> tuple[dict, float, str]:
    workers = "4" if number == 10 else "1"
    proc = subprocess.run(
        [sys.executable, "-m", "hamcodes.cli", "fullcheck", "full", "--only", str(number),
         "--format", "json", "--workers", workers],
        capture_output=True,
        text=True,
        timeout=TIME_LIMITS[number] + 60,
    )
    assert proc.returncode in (0, 1), proc.stderr
    line = next(ln for ln in proc.stderr.splitlines() if ln.startswith("criterion"))
    seconds = float(re.search(r"in ([0-9.]+)s", line).group(1))
    report = json.loads(proc.stdout)["criteria"][str(number)]["report"]
    return report, seconds, line


@pytest.mark.parametrize("number", sorted(TIME_LIMITS))
def test_criterion(number, capsys):
    report, seconds, line = run_isolated(number)
    with capsys.disabled():
        print(f"\n{line}")
    assert report["passed"], json.dumps(report)
    assert seconds < TIME_LIMITS[number], f"{seconds:.2f}s over {TIME_LIMITS[number]}s"
