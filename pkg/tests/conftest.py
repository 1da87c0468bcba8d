from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings as hyp_settings

from weakiso.space import validate

sys.path.insert(0, str(Path(__file__).parent))

hyp_settings.register_profile("default", max_examples=60, deadline=None, derandomize=True,
                              suppress_health_check=[HealthCheck.too_slow])
hyp_settings.load_profile("default")


def triangle(a, b, c, labels=("a", "b", "c")):
    """Three points with d(0,1)=a, d(0,2)=b, d(1,2)=c."""
    return validate([[0, a, b], [a, 0, c], [b, c, 0]], list(labels))


@pytest.fixture
def spectrum_pair():
    return triangle(5, 6, 6), triangle(6, 5, 5)


@pytest.fixture
def triangles():
    return {"X": triangle(3, 4, 5), "Y": triangle(3, 4, 4), "Z": triangle(3, 4, 6)}


@pytest.fixture
def scalene():
    return triangle(3, 5, 4, labels=("x1", "x2", "x3"))


VR_TWINS = (
    [[0, 7, 9, 10], [7, 0, 8, 11], [9, 8, 0, 12], [10, 11, 12, 0]],
    [[0, 7, 9, 10], [7, 0, 8, 12], [9, 8, 0, 11], [10, 12, 11, 0]],
)
CYCLE_PAIR = (
    [[0, 7, 12, 8], [7, 0, 10, 11], [12, 10, 0, 9], [8, 11, 9, 0]],
    [[0, 7, 12, 8], [7, 0, 10, 9], [12, 10, 0, 11], [8, 9, 11, 0]],
)


@pytest.fixture
def vr_twins():
    return validate(VR_TWINS[0]), validate(VR_TWINS[1])


@pytest.fixture
def cycle_pair():
    return validate(CYCLE_PAIR[0]), validate(CYCLE_PAIR[1])


@pytest.fixture
def rng():
    return np.random.default_rng(20241015)


_acceptance: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    name = report.nodeid.split("::")[-1]
    if "test_acceptance" in report.nodeid and name.startswith("test_ac"):
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        num = int(name[len("test_ac"):].split("_")[0])
        label = name.split("_", 2)[2].replace("_", " ")
        verdict = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{num:>2} {verdict}  {label}")
