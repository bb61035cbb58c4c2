"""Acceptance criteria 1 to 11, each at its stated bound and time limit.

Every criterion prints one ``[PASS]``/``[FAIL]`` line; the lines are also
collected into the terminal summary.
"""

from functools import lru_cache

import pytest

from heytingkit.acceptance import CRITERIA, run_criterion

SCOREBOARD: list[str] = []

# the one failure criterion 9 is expected to report; see test_criterion_9
OUT_OF_REACH = "exhaustive residuation over supports in 0..5 is out of reach"


@lru_cache(maxsize=None)
def result(number: int):
    res = run_criterion(number, seed=0)
    line = res.line()
    print(line)
    for d in res.details:
        print("    " + d)
    SCOREBOARD.append(line)
    return res


@pytest.mark.parametrize("number", [n for n in sorted(CRITERIA) if n != 9])
def test_criterion(number):
    res = result(number)
    assert res.passed, res.failures


@pytest.mark.xfail(strict=True, reason=(
    "finite and cofinite sets over 0..5 form a 7-cube; its antichains number about 2.4e12, "
    "so the literal exhaustive residuation scan cannot be run"
))
def test_criterion_9():
    res = result(9)
    assert res.passed, res.failures


def test_criterion_9_feasible_parts():
    # everything criterion 9 checks apart from the unreachable exhaustive scan
    res = result(9)
    others = [f for f in res.failures if not f.startswith(OUT_OF_REACH)]
    assert others == []
    assert res.seconds < res.limit
    assert any("principal triples over supports in 0..5, 0 failures" in d for d in res.details)
    assert any("transport verified for 26" in d for d in res.details)
