"""Acceptance gate: every criterion with its pinned tolerance, one line per result.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines,
or `sublorentz validate` for the machine-readable report.
"""

import pytest

from sublorentz import validation


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    details = ", ".join(f"{k}={v}" for k, v in result.details.items())
    print(f"[{status}] criterion {result.number} {result.name} "
          f"({result.elapsed:.2f}s/{result.runtime_limit:.0f}s) {details}")
    assert result.passed, f"criterion {result.number} failed: {result.failures}"


@pytest.mark.parametrize("criterion", validation.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    _report(criterion())
