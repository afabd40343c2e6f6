"""Acceptance criteria 1-10: each runs the rows of the golden suite that
belong to it and prints a single PASS/FAIL line."""

import pytest

from mldegree.golden import CRITERIA, criterion_verdict, run_suite


@pytest.fixture(scope="module")
def results():
    return run_suite()


def _explain(rows):
    bad = [r for r in rows if not r.passed]
    return "; ".join(f"{r.name}: {r.status} (expected {r.expected!r}, got {r.computed!r}) {r.message}"
                     for r in bad)


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(results, k, capsys):
    rows = [r for r in results if r.criterion == k]
    ok = criterion_verdict(results, k)
    with capsys.disabled():
        print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'} - {CRITERIA[k]} ({len(rows)} rows)")
    assert rows, f"criterion {k} has no rows"
    assert ok, _explain(rows)


def test_additional_reference_rows(results):
    rows = [r for r in results if r.criterion is None]
    assert rows and all(r.passed for r in rows), _explain(rows)
