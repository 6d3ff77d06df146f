import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from herdkit import coalg
from herdkit.corpus import cyclic, groups_up_to, xor_heap
from herdkit.setcore import group_to_heap

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GROUPS = groups_up_to(8)
SMALL_GROUPS = [g for g in GROUPS if g.size <= 4]


@pytest.fixture(scope="session")
def c2_herd():
    return coalg.heap_algebra(xor_heap())


@pytest.fixture(scope="session")
def c3_herd():
    return coalg.heap_algebra(group_to_heap(cyclic(3)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
