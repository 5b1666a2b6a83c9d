import sys

import pytest

from g1tloewy.cartan import build_root_system


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def B2():
    return build_root_system("B2")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
