from __future__ import annotations

import sys

import pytest

from momentgraphs.weyl import affine_weyl_group


@pytest.fixture(scope="session")
def A1():
    return affine_weyl_group("A1")


@pytest.fixture(scope="session")
def A2():
    return affine_weyl_group("A2")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
