import random

import pytest

from crosscap.words import MCGWord, Slide, Twist


def random_symbol(rng: random.Random, g: int, slides_only: bool = False):
    if slides_only or rng.random() < 0.5:
        a = rng.randrange(1, g + 1)
        b = rng.randrange(1, g + 1)
        while b == a:
            b = rng.randrange(1, g + 1)
        return Slide(a, b)
    size = rng.choice([s for s in range(2, g + 1, 2)])
    return Twist(tuple(rng.sample(range(1, g + 1), size)))


def random_word(rng: random.Random, g: int, length: int, slides_only: bool = False) -> MCGWord:
    letters = [
        (random_symbol(rng, g, slides_only), rng.choice((-2, -1, 1, 2)))
        for _ in range(length)
    ]
    return MCGWord.from_letters(g, letters)


@pytest.fixture
def rng():
    return random.Random(0)
