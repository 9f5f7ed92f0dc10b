import math

import numpy as np
import pytest
from hypothesis import strategies as st

QUBIT_PRIORS = [(0.5, 0.5), (0.6, 0.4), (0.2, 0.8), (0.3, 0.7)]
QUTRIT_PRIORS = [(1 / 3, 1 / 3, 1 / 3), (0.2, 0.4, 0.4), (0.5, 0.3, 0.2), (0.2, 0.2, 0.6)]
CAPTION_PRIORS = QUBIT_PRIORS + QUTRIT_PRIORS


@st.composite
def distributions(draw, min_levels=2, max_levels=6, vacuum=False):
    """Random normalised photon-number distributions.

    With ``vacuum=True`` the n=0 level keeps at least a little weight.
    """
    size = draw(st.integers(min_levels, max_levels))
    raw = draw(
        st.lists(
            st.one_of(st.just(0.0), st.floats(1e-6, 1.0)),
            min_size=size,
            max_size=size,
        )
    )
    if vacuum:
        raw[0] = max(raw[0], 1e-3)
    if sum(raw) == 0:
        raw[draw(st.integers(0, size - 1))] = 1.0
    total = math.fsum(raw)
    return np.array([x / total for x in raw])


taus = st.floats(0.0, 10.0, allow_nan=False)


@pytest.fixture(params=CAPTION_PRIORS, ids=lambda p: ",".join(f"{x:.3g}" for x in p))
def caption_prior(request):
    return np.array(request.param)


# -- acceptance summary: one line per criterion --------------------------------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        if not name.startswith("test_criterion_"):
            return
        number = int(name.split("_")[2])
        _ACCEPTANCE.setdefault(number, []).append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        results = _ACCEPTANCE[number]
        failed = [n for n, outcome in results if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(results) - len(failed)}/{len(results)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {number}: {status} ({detail})")
