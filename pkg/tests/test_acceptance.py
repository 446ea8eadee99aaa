"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Tolerances are exact (rational arithmetic, equality of spans); the only
numeric limits are the per-criterion time budgets in ``BUDGETS``.
Run directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import pytest

from operad_forge.acceptance import BUDGETS, CRITERIA, TITLES, run_all

_cache: dict = {}


def _reports():
    if not _cache:
        _cache.update(run_all())
    return _cache


def _line(n, rep) -> str:
    return f"criterion {n}: {'PASS' if rep.passed else 'FAIL'} {TITLES[n]}"


def test_budgets_cover_every_criterion():
    assert set(BUDGETS) == set(CRITERIA) == set(TITLES) == set(range(1, 15))


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    rep = _reports()[n]
    with capsys.disabled():
        print("\n" + _line(n, rep))
    assert rep.passed, rep.to_text()


if __name__ == "__main__":
    import sys

    reports = run_all()
    for n, rep in reports.items():
        print(_line(n, rep))
    sys.exit(0 if all(r.passed for r in reports.values()) else 1)
