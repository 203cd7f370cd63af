import sys

import pytest

from ihlab.field import GF, Q


@pytest.fixture(params=[Q, GF(2), GF(5)], ids=str)
def field(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
