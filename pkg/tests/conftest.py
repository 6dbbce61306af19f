import pytest

_results: dict[int, list[str]] = {}
_notes: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(n, []).append(rep.outcome)


@pytest.fixture
def note(request):
    """Attach a line of text to the summary of the current criterion."""
    n = request.node.get_closest_marker("acceptance").args[0]
    return lambda text: _notes.setdefault(n, []).append(text)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_results):
        verdict = "PASS" if all(o == "passed" for o in _results[n]) else "FAIL"
        tr.write_line(f"ACCEPTANCE {n}: {verdict}")
        for text in _notes.get(n, []):
            tr.write_line(f"    {text}")
