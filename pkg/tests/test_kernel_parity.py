"""Differential test: the pure and compiled cores are interchangeable."""

import random

import pytest

from semichain import _codes
from semichain.backend import core_class

try:
    core_class("compiled")
    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

pytestmark = pytest.mark.skipif(
    not HAVE_COMPILED, reason="compiled core not built"
)


def random_masks(rng: random.Random, n: int) -> tuple[int, int]:
    down = sum(1 << i for i in range(n) if rng.random() < 0.25)
    up = sum(1 << i for i in range(n) if rng.random() < 0.15)
    return down, up & ~down


@pytest.mark.parametrize("seed", range(150))
def test_identical_decision_streams(seed):
    rng = random.Random(seed)
    pure = core_class("pure")()
    compiled = core_class("compiled")()
    for _ in range(45):
        down, up = random_masks(rng, pure.n)
        assert pure.try_insert(down, up) == compiled.try_insert(down, up)
        assert pure.n == compiled.n
        assert pure.width() == compiled.width()
        assert pure.maximal_mask() == compiled.maximal_mask()
        if pure.n and rng.random() < 0.1:
            pure.remove_last()
            compiled.remove_last()
    assert pure.state_key() == compiled.state_key()
    for p in range(pure.n):
        assert pure.down_mask(p) == compiled.down_mask(p)
        assert pure.up_mask(p) == compiled.up_mask(p)
        assert pure.dsize(p) == compiled.dsize(p)
        assert pure.usize(p) == compiled.usize(p)


def test_growth_beyond_one_word():
    # crossing the 64- and 128-point word boundaries
    rng = random.Random(7)
    pure = core_class("pure")()
    compiled = core_class("compiled")()
    lefts = []
    for _ in range(200):
        lefts.append((lefts[-1] if lefts else 0) + rng.randint(0, 1))
        while sum(1 for l in lefts[:-1] if l >= lefts[-1] - 1) + 1 > 30:
            lefts[-1] += 1
        down = sum(
            1 << i for i, l in enumerate(lefts[:-1]) if l + 1 < lefts[-1]
        )
        assert pure.try_insert(down, 0) == compiled.try_insert(down, 0) == (_codes.OK, -1)
    assert pure.state_key() == compiled.state_key()
    assert pure.width() == compiled.width()


def test_clone_independence():
    for backend in ("pure", "compiled"):
        core = core_class(backend)()
        core.try_insert(0, 0)
        core.try_insert(0, 0)
        twin = core.clone()
        twin.try_insert(0b11, 0)
        assert core.n == 2 and twin.n == 3
        assert core.width() == 2
