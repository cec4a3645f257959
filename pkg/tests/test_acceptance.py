"""One test per acceptance criterion, at the default bounds.

Each test prints its pass/fail line and logs it for the terminal summary.
"""

import pytest

from slimlat import suites


def _record(result, log):
    line = result.line()
    print(line)
    log.append(line)
    assert result.passed, result.failures[:3]


@pytest.mark.parametrize("number, check", [
    (1, suites.check_oracle_equivalence),
    (2, suites.check_fork_closure),
    (3, suites.check_theorem_main),
    (4, suites.check_retraction_rigidity),
    (5, suites.check_prop_zo),
    (6, suites.check_chain_determination),
    (7, suites.check_rectangular_facts),
    (8, suites.check_patch_definitions),
    (9, suites.check_boolean_retraction),
    (10, suites.check_algebraic_closedness),
    (11, suites.check_fixtures),
])
def test_criterion(number, check, ctx, acceptance_log):
    if number in (2, 11):
        result = check(ctx)
    else:
        result = check(ctx, suites.DEFAULT_BOUNDS[number])
    assert result.number == number
    _record(result, acceptance_log)


def test_fork_closure_sample_size(ctx):
    assert suites.check_fork_closure(ctx, samples=50).summary.startswith("50 random")


def test_verify_trivial_bound():
    results = suites.run_suite("thm-main", max_size=2)
    assert [r.number for r in results] == [3, 4, 8]
    assert all(r.passed for r in results)
    assert results[0].stats["members"] == 2
