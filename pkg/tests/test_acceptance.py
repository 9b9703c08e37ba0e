"""Every acceptance criterion at its stated tolerance, one test each.

Each test prints a PASS/FAIL line; the lines are repeated together in the
terminal summary (see conftest.py) so ``pytest -v`` shows them even when
output capture is on.
"""
import pytest

from evade.acceptance import CRITERIA

RESULTS = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{fn.criterion[0]:02d}-{fn.criterion[1]}" for fn in CRITERIA])
def test_criterion(criterion):
    result = criterion()
    RESULTS.append(result)
    print(result.line())
    assert result.ok, result.line()
