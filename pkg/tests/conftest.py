import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gv4calc.laurent import MVLaurent  # noqa: E402

small_fraction = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


@st.composite
def laurent2(draw, max_terms=5, lo=-3, hi=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(lo, hi)), draw(st.integers(lo, hi)))
        terms[e] = draw(small_fraction)
    return MVLaurent(2, terms)


@st.composite
def polynomial2(draw, max_terms=5, hi=4):
    return draw(laurent2(max_terms=max_terms, lo=0, hi=hi))


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = getattr(report, "criterion", None)
    if crit is not None:
        prev = _criteria.get(crit[0], (crit[1], True))
        _criteria[crit[0]] = (crit[1], prev[1] and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
