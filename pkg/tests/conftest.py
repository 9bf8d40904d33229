from functools import lru_cache

import pytest

from perdim import dsl, families
from perdim.algebra import build_algebra
from perdim.linalg import Field


@lru_cache(maxsize=None)
def corpus_algebra(name: str, field: str = "Q"):
    return build_algebra(dsl.parse(families.corpus_text(name)), Field.parse(field))


def vertex(a, label) -> int:
    return a.vertex_index(str(label))


@pytest.fixture
def special_biserial():
    return corpus_algebra("special_biserial")


@pytest.fixture
def radical_square_six():
    return corpus_algebra("radical_square_six")


@pytest.fixture
def dual_plus_point():
    return corpus_algebra("dual_numbers_plus_point")


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line for an acceptance check, then assert it."""
    def _record(number: int, title: str, checks: dict):
        failed = [k for k, ok in checks.items() if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"[{status}] {number:2d}. {title}"
        if failed:
            line += " -- failing: " + "; ".join(failed)
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not failed, line
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
