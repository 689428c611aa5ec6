import os
import random

import pytest

from rspin.artin import GF, QQ, ArtinRing

SEED = int(os.environ.get("SPIN_SEED", "20240229"))

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.fixture
def rng():
    return random.Random(SEED)


def ring_family():
    """Coefficient rings exercised throughout the suite."""
    return [
        ArtinRing(["t"], [[2]]),
        ArtinRing(["t"], [[3]]),
        ArtinRing(["t"], [[5]]),
        ArtinRing(["t"], [[4]], GF(5)),
        ArtinRing(["t", "eps"], [[5, 0], [0, 2], [1, 1]]),
        ArtinRing(["t", "s"], [[3, 0], [0, 2]], GF(3)),
    ]


@pytest.fixture(params=ring_family(), ids=repr)
def ring(request):
    return request.param


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not report.failed:
        return
    n, title = marker.args
    entry = _criteria.setdefault(n, (title, []))
    entry[1].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcomes = _criteria[n]
        status = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
