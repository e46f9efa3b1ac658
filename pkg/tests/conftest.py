import warnings

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def no_truncation():
    """Turn truncation warnings into errors for the duration of a test."""
    from lpuncertainty.field import TruncationWarning

    with warnings.catch_warnings():
        warnings.simplefilter("error", TruncationWarning)
        yield


# -- acceptance report: one line per criterion -------------------------------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = "; ".join(f"{k}={v}" for k, v in report.user_properties)
        _ACCEPTANCE[name] = (report.outcome.upper(), detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split("_")[2])):
        outcome, detail = _ACCEPTANCE[name]
        label = name.split("_", 3)[3].replace("_", " ")
        terminalreporter.write_line(f"criterion {name.split('_')[2]} ({label}): {outcome}"
                                    + (f"  [{detail}]" if detail else ""))
