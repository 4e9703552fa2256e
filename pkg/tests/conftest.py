from functools import lru_cache

import pytest

from pathlat import PathFamily, build_lattice

DYCK = PathFamily.dyck()
MOTZKIN = PathFamily.motzkin()
SCHRODER = PathFamily.schroder()

# criterion number -> (PASS/FAIL, detail); filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[str, str]] = {}


@lru_cache(maxsize=None)
def lattice(family, n):
    return build_lattice(family, n)


@pytest.fixture
def lat():
    return lattice


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}" + (f"  {detail}" if detail else ""))
