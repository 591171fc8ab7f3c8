import random

import pytest

from fskit.forest import LEAF, Tree, graft, leaf_count
from fskit.presentation import (
    SkeinPresentation,
    TwoColourRightVine,
    classify,
    parse_presentation,
)


def presentation(text: str, name: str = "") -> SkeinPresentation:
    return parse_presentation(text, name)


def vine_class(text: str) -> TwoColourRightVine:
    cls = classify(parse_presentation(text))
    assert isinstance(cls, TwoColourRightVine)
    return cls


# the two flagship presentations
J3_TEXT = "colors a b\nrel a1 a1 a3 = b1 b2 b3\n"
NONSIMPLE4_TEXT = "colors a b\nrel a1 a1 a3 a4 = b1 b2 b3 b4\n"
CLEARY2_TEXT = "colors a b\nrel a1 a1 = b1 b2\n"
RHO2_TEXT = "colors a b\nrel a1 a2 = b1 b2\n"


@pytest.fixture(scope="session")
def j3():
    return vine_class(J3_TEXT)


@pytest.fixture(scope="session")
def nonsimple4():
    return vine_class(NONSIMPLE4_TEXT)


@pytest.fixture(scope="session")
def cleary2():
    return vine_class(CLEARY2_TEXT)


@pytest.fixture(scope="session")
def rho2():
    return vine_class(RHO2_TEXT)


def random_tree(rng: random.Random, carets: int, colours=("a", "b")) -> Tree:
    t = LEAF
    for _ in range(carets):
        t = graft(t, rng.randint(1, leaf_count(t)), rng.choice(colours))
    return t


def random_monochrome_tree(rng: random.Random, carets: int, colour="a") -> Tree:
    return random_tree(rng, carets, (colour,))


def random_point(rng: random.Random, max_len: int = 6):
    from fskit.sequences import ev_periodic

    pre = "".join(rng.choice("01") for _ in range(rng.randint(0, max_len)))
    per = "".join(rng.choice("01") for _ in range(rng.randint(1, max_len)))
    return ev_periodic(pre, per)


def random_signed_word(rng: random.Random, length: int):
    return tuple(
        (rng.choice(("A0", "A1", "B0", "B1")), rng.choice((1, -1)))
        for _ in range(length)
    )
