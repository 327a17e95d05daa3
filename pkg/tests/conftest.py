import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    rec = {}

    def record(number, title):
        rec["number"], rec["title"] = number, title

    yield record
    if "number" in rec:
        call = getattr(request.node, "rep_call", None)
        ok = call is not None and call.passed
        secs = call.duration if call is not None else 0.0
        ACCEPTANCE_LINES.append(
            (rec["number"], f"criterion {rec['number']:>2}: {'PASS' if ok else 'FAIL'} "
                            f"({secs:.2f} s) {rec['title']}"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
