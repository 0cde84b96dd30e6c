import random

import pytest

from simcon.congruence import equivalent
from simcon.properties import SUITES, equivalent_partner, run_suites


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small_run(name):
    (result,) = run_suites(seed=7, samples=60, max_len=8, names=[name])
    assert result.passed, result.counterexamples[:5]


def test_runs_are_reproducible():
    a = run_suites(seed=3, samples=40, names=["sandwich"])
    b = run_suites(seed=3, samples=40, names=["sandwich"])
    assert a == b


def test_partner_stays_in_class():
    rng = random.Random(1)
    for _ in range(200):
        x = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 8)))
        assert equivalent(x, equivalent_partner(rng, x, 2, 2, 10), 2)
