from pathlib import Path

import pytest
from hypothesis import settings

from hlirred.permgroup import builtin_group, make_group, Perm

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "src" / "hlirred" / "data"
EXAMPLES = DATA / "examples"


@pytest.fixture(scope="session")
def A4():
    return builtin_group("A4")


@pytest.fixture(scope="session")
def A5():
    return builtin_group("A5")


@pytest.fixture(scope="session")
def S3():
    return builtin_group("S3")


@pytest.fixture(scope="session")
def D5():
    return make_group([Perm.parse("(0 1 2 3 4)"), Perm.parse("(1 4)(2 3)")], name="D5")


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
