import random
import pytest

from cluster_dual import cartan as weyl
from cluster_dual import maps
from cluster_dual.words import DoubleWord


@pytest.fixture
def rng():
    return random.Random(20240817)


def W(text: str) -> DoubleWord:
    return DoubleWord.from_string(text)


def rational_point(word, cdata, rng, bound=30):
    return maps.random_assignment(word, cdata, rng, None, bound)


def type_data(label: str):
    return weyl.build_cartan(label)
