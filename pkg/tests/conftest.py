import os
import re

import numpy as np
import pytest

_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture
def record():
    """Record one acceptance line: ``record(criterion, ok, detail)``."""

    def _rec(criterion: str, ok, detail: str = ""):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
        _RESULTS.append((criterion, status, detail))
        print(f"criterion {criterion}: {status} {detail}")
        return ok

    return _rec


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def key(r):
        m = re.match(r"(\d+)(.*)", r[0])
        return (int(m.group(1)), m.group(2)) if m else (10**6, r[0])

    for crit, status, detail in sorted(_RESULTS, key=key):
        terminalreporter.write_line(f"criterion {crit:<4} {status}  {detail}")


def env_flag(name: str) -> bool:
    return os.environ.get(name, "") not in ("", "0")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
