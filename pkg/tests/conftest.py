import itertools
from functools import reduce

import pytest

from ffdesign.gf2 import Design

ACCEPTANCE_LINES = []

D1 = "A,B,C,D,ABC,ABD,ACD,BCD,ABCD"
D2 = "A,BC,BD,CD,ABC,ABD,ACD,BCD,ABCD"
O4 = "A,B,C,D,ABC,ABD,ACD,BCD"
K12 = "A,B,C,D,ABC,ABD,ACD,BCD,AD,BD,CD,ABCD"


def brute_wlp(columns):
    """Word counts by trying every nonempty subset of columns."""
    k = len(columns)
    counts = [0] * k
    for size in range(1, k + 1):
        for combo in itertools.combinations(columns, size):
            if reduce(lambda a, b: a ^ b, combo) == 0:
                counts[size - 1] += 1
    return tuple(counts)


def brute_rank(columns):
    """Rank as log2 of the size of the span."""
    span = {0}
    for c in columns:
        span |= {x ^ c for x in span}
    return len(span).bit_length() - 1


@pytest.fixture
def d1():
    return Design.parse(D1, 4)


@pytest.fixture
def d2():
    return Design.parse(D2, 4)


@pytest.fixture
def o4():
    return Design.parse(O4, 4)


@pytest.fixture
def k12():
    return Design.parse(K12, 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
