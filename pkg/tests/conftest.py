import pytest

_acceptance = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance verdict: ``report(label, ok, detail)``."""
    log = request.config.stash.setdefault(_acceptance, [])

    def _report(label, ok, detail=""):
        log.append((label, bool(ok), detail))
        return ok

    return _report


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_acceptance, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in log:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
