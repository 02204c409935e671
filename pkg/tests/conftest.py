from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    results = request.config.stash.setdefault(_RESULTS, [])

    @contextmanager
    def check(label):
        try:
            yield
        except BaseException as exc:
            first = str(exc).strip().splitlines()[0] if str(exc).strip() else ""
            line = f"FAIL  {label}  ({type(exc).__name__}: {first})"
            results.append(line)
            print(line)
            raise
        line = f"PASS  {label}"
        results.append(line)
        print(line)

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[", 1)[1].split("]", 1)[0])):
            terminalreporter.write_line(line)
