"""Acceptance criteria 1-11, each run at its stated tolerance.

Every criterion prints one PASS/FAIL line (visible with ``pytest -s`` and in the
terminal summary below).
"""
import pytest

from dynpoisson.acceptance import CRITERIA, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    RESULTS[number] = result
    print(result.line())
    assert result.passed, result.details

