import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ut2gpi import UTElement, builtin_action


@pytest.fixture(scope="session")
def reg():
    return builtin_action("regular")


@pytest.fixture(scope="session")
def act_d():
    return builtin_action("D")


@pytest.fixture(scope="session")
def act_f():
    return builtin_action("F")


@pytest.fixture(scope="session")
def all_actions(reg, act_d, act_f):
    return {"regular": reg, "D": act_d, "F": act_f}


def random_element(rng: random.Random) -> UTElement:
    def scalar():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return UTElement(scalar(), scalar(), scalar())


def random_assignment(rng: random.Random, n: int):
    return {i: random_element(rng) for i in range(1, n + 1)}
