import random
import sys

import pytest

from gwp import catalog
from gwp.gog import validate
from gwp.words import Letter, free_reduce, invert, parse_word

AB = [Letter("a", 1), Letter("a", -1), Letter("b", 1), Letter("b", -1)]


def W(text):
    return parse_word(text)


def random_reduced(rng, lo, hi, alphabet=AB):
    n = rng.randint(lo, hi)
    w = []
    while len(w) < n:
        x = rng.choice(alphabet)
        if w and w[-1] == x.inverse():
            continue
        w.append(x)
    return tuple(w)


def enumerate_products(gens, depth, max_len=None):
    """All freely reduced products of at most ``depth`` factors gen^{+-1}."""
    factors = [free_reduce(g) for g in gens] + [invert(free_reduce(g)) for g in gens]
    seen = {()}
    frontier = {()}
    for _ in range(depth):
        nxt = set()
        for w in frontier:
            for f in factors:
                p = free_reduce(w + f)
                if max_len is not None and len(p) > max_len:
                    continue
                if p not in seen:
                    nxt.add(p)
        seen |= nxt
        frontier = nxt
    return seen


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture(scope="session")
def bs12():
    return validate(catalog.baumslag_solitar(1, 2))


@pytest.fixture(scope="session")
def bs23():
    return validate(catalog.baumslag_solitar(2, 3))


@pytest.fixture(scope="session")
def trefoil():
    return validate(catalog.torus_knot(2, 3))


@pytest.fixture(scope="session")
def free_ab():
    return validate(catalog.free_product())


@pytest.fixture(scope="session")
def p3():
    spec, translation = catalog.raag_p3()
    return validate(spec), translation


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(module.RESULTS):
            terminalreporter.write_line(module.RESULTS[n])
