import os
import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def certificate():
    from cubecolor.certificate import certificate_partition

    return certificate_partition()


@pytest.fixture(scope="session")
def sandbox_run():
    """Seeded search of the E^7 sandbox (records, class representatives)."""
    from cubecolor.classify import classify_codes
    from cubecolor.search import reject_isomorphs, run_case, sandbox_case

    case = sandbox_case()
    reps8 = classify_codes(7, 8, 4).representatives
    records = run_case(case, classes={8: reps8})
    classes = reject_isomorphs(P for r in records for P in r.solutions)
    return case, records, classes


# -- acceptance summary ----------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (title, "PASS" if report.outcome == "passed" else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")
