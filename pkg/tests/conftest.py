from fractions import Fraction
import random
import sys

import pytest
from hypothesis import strategies as st

from hyperalg.algebra import HNum


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full 8**8 / 8**9 enumerations")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
exact_hnums = st.builds(HNum, rationals, rationals, rationals, rationals)


def random_rational_hnum(rng: random.Random) -> HNum:
    return HNum(*(Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(4)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)
