import random

import pytest

from exactsynth.synthesis import get_context

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def vctx():
    return get_context("v-basis")


@pytest.fixture(scope="session")
def tctx():
    return get_context("clifford-t")


@pytest.fixture(scope="session")
def tvctx():
    return get_context("clifford-t-v")


def random_word(ctx, rng, max_len):
    """A random product of generators and unit generators, with its letters."""
    alphabet = [g.label for g in ctx.generators] + sorted(ctx.unit_generators)
    letters = [rng.choice(alphabet) for _ in range(rng.randint(0, max_len))]
    q = ctx.alg.one()
    for a in letters:
        q = q * (ctx.unit(a) if a in ctx.unit_generators else ctx.generator(a).q)
    return q, letters


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
