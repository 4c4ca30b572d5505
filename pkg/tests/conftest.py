import random

import pytest
from hypothesis import settings

from labelminer import parse_corpus

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")

# Toy corpus: counting questions fail, the frequent word "ducks" is
# label-independent. Five rows, three misclassified (label 1).
TOY_ROWS = [
    ("how many ducks are in the picture".split(), 1),
    ("what are the ducks eating".split(), 1),
    ("how many roosters are in the puddle".split(), 1),
    ("do you see ducks in the puddle".split(), 0),
    ("are there many ducks playing".split(), 0),
]


@pytest.fixture
def toy_db():
    return parse_corpus(TOY_ROWS)


@pytest.fixture
def toy_db_x20():
    return parse_corpus(TOY_ROWS * 20)


def random_rows(rng: random.Random, n: int, m: int, density: float = 0.3):
    """Random instance stream over tokens w0..w{m-1} with random labels."""
    rows = []
    for _ in range(n):
        tokens = [f"w{j}" for j in range(m) if rng.random() < density]
        rows.append((tokens, rng.randint(0, 1)))
    return rows


def random_db(seed: int, n: int, m: int, density: float = 0.3):
    rng = random.Random(seed)
    return parse_corpus(random_rows(rng, n, m, density))
