import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def report(request):
    """Record one pass/fail line (plus optional findings) for the summary."""
    lines = request.config.stash[_LINES]

    def emit(criterion, ok, detail, findings=()):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
        print(line)
        lines.append(line)
        for f in findings:
            print(f"    finding: {f}")
            lines.append(f"    finding: {f}")

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
