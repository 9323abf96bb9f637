import numpy as np
import pytest

from multiscan.core import PatternSet

FIG1 = PatternSet([b"AAC", b"AGT", b"GTA"])
FIG1_TEXT = b"AACAGTA"


def random_instance(rng, n_max=10_000, d_max=64, m_min=1, m_max=16, sigma=None):
    """Random (text, patterns): about half the patterns are cut from the text."""
    sigma = sigma or int(rng.choice([2, 4, 256]))
    n = int(rng.integers(0, n_max + 1))
    m = int(rng.integers(m_min, m_max + 1))
    d = int(rng.integers(1, d_max + 1))
    text = rng.integers(0, sigma, size=n, dtype=np.uint8)
    pats = []
    for _ in range(d):
        if n >= m and rng.random() < 0.5:
            s = int(rng.integers(0, n - m + 1))
            pats.append(text[s:s + m].tobytes())
        else:
            pats.append(rng.integers(0, sigma, size=m, dtype=np.uint8).tobytes())
    return text, PatternSet(pats)


@pytest.fixture
def rng():
    return np.random.default_rng(20260415)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = (mark.args[0], mark.args[1])
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        detail = ""
        if rep.skipped and isinstance(rep.longrepr, tuple):
            detail = rep.longrepr[2]
        prev = _criteria.get(key)
        if prev is None or prev[0] == "PASS":
            _criteria[key] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), (status, detail) in sorted(_criteria.items()):
        line = f"criterion {num}: {status}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
