"""Shared fixtures: the acceptance-criteria verdict log.

Criterion tests record one line each; the terminal summary replays them
so every pass/fail verdict is visible in ordinary pytest output, where
per-test capture would otherwise swallow prints from passing tests.
"""

import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def verdict(request):
    store = request.config.stash.setdefault(_LINES, [])

    def log(num: int, label: str, ok: bool, detail: str) -> None:
        line = f"criterion {num:02d} {label}: {'PASS' if ok else 'FAIL'} ({detail})"
        store.append(line)
        assert ok, line

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
