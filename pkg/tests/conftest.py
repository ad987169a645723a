import itertools

import pytest


def all_words(m):
    """Every valid type of length m, by brute-force filtering of {u,d}^m."""
    out = []
    for letters in itertools.product("du", repeat=m):
        w = "".join(letters)
        if "uu" not in w and (not w or w[-1] == "d"):
            out.append(w)
    return out


@pytest.fixture(scope="session")
def words():
    return all_words


_criteria: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _criteria[item.nodeid] = (label, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _criteria.values():
        terminalreporter.write_line(f"{status}  {label}")
