import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import W, enumerate_products, random_reduced
from gwp.errors import InputError
from gwp.free import ZProgression, coset_contains, fold, intersect_cyclic
from gwp.words import EMPTY, free_reduce, invert, power


def test_fold_two_generators():
    G = fold([W("a^2"), W("a b")])
    assert len(G.vertices) == 2 and G.is_deterministic()
    assert G.read(W("a^2")) == G.basepoint
    assert G.read(W("a b")) == G.basepoint
    assert G.read(W("b")) != G.basepoint
    # cross-check against bounded enumeration
    products = enumerate_products([W("a^2"), W("a b")], 6)
    assert W("b") not in products and W("a b") in products


def test_fold_trivial_and_cyclic():
    G = fold([])
    assert len(G.vertices) == 1 and G.edges[0] == {}
    assert G.read(EMPTY) == G.basepoint and G.read(W("a")) is None
    H = fold([W("a")])
    assert len(H.vertices) == 1
    for k in range(-5, 6):
        assert H.read(power(W("a"), k)) == H.basepoint


def test_coset_contains_examples():
    assert not coset_contains([W("a^2"), W("a b")], EMPTY, W("b a"))
    assert W("b a") not in enumerate_products([W("a^2"), W("a b")], 6)
    assert coset_contains([W("a^2"), W("a b")], EMPTY, W("a b"))
    assert coset_contains([W("a")], W("b"), W("a^3 b"))
    assert not coset_contains([W("a")], W("b"), W("b a"))


def test_coset_contains_rejects_mixed_alphabet():
    with pytest.raises(InputError):
        coset_contains([W("a")], EMPTY, W("z"), known={"a", "b"})


@pytest.mark.parametrize("gens, rep, w, expected", [
    (["a^4"], "", "a^2", ZProgression.make(0, 2)),
    (["b"], "", "a", ZProgression.make(0, 0)),
    ([], "b", "a", ZProgression.EMPTY),
    (["a b a^-1"], "", "a b^3 a^-1", ZProgression.make(0, 1)),
])
def test_intersect_cyclic_examples(gens, rep, w, expected):
    assert intersect_cyclic([W(g) for g in gens], W(rep), W(w)) == expected


def test_intersect_cyclic_scanned_example():
    gens, rep, w = [W("a^4")], W("a^2"), W("a^2")
    hits = {n for n in range(-10, 11) if coset_contains(gens, rep, power(w, n))}
    assert hits == {n for n in range(-10, 11) if n % 2}
    assert intersect_cyclic(gens, rep, w) == ZProgression.make(1, 2)


def test_intersect_cyclic_trivial_word():
    with pytest.raises(InputError):
        intersect_cyclic([W("a")], EMPTY, W("a a^-1"))


def test_progression_canonical():
    assert ZProgression.make(-3, 4) == ZProgression.make(5, -4) == ZProgression(False, 1, 4)
    assert str(ZProgression.make(1, 2)) == "1 + 2Z"
    assert str(ZProgression.make(7, 0)) == "{7}"
    assert str(ZProgression.EMPTY) == "{}"


def random_instance(rng):
    gens = [random_reduced(rng, 1, 4) for _ in range(rng.randint(0, 3))]
    return gens, random_reduced(rng, 0, 4)


def test_enumeration_positives_are_members(rng):
    # sound direction only: a bounded enumeration never certifies absence
    for _ in range(60):
        gens, _ = random_instance(rng)
        for w in enumerate_products(gens, 4):
            assert coset_contains(gens, EMPTY, w)


def ternary_closure(seed_words, rounds, rng, cap=40):
    pool = list(seed_words)
    for _ in range(rounds):
        new = []
        for _ in range(cap):
            x, y, z = (rng.choice(pool) for _ in range(3))
            new.append(free_reduce(x + invert(y) + z))
        pool += new
    return pool


def test_ternary_closure_is_accepted(rng):
    for _ in range(30):
        gens, rep = random_instance(rng)
        seeds = [free_reduce(g + rep) for g in gens] + [rep]
        for x in ternary_closure(seeds, 4, rng):
            assert coset_contains(gens, rep, x)


def test_fold_is_deterministic_on_random_input(rng):
    for _ in range(100):
        gens, rep = random_instance(rng)
        G = fold(gens, rep)
        assert G.is_deterministic()
        assert fold(gens, rep).edges == G.edges


def test_intersect_cyclic_pointwise(rng):
    for _ in range(60):
        gens, rep = random_instance(rng)
        w = random_reduced(rng, 1, 4)
        P = intersect_cyclic(gens, rep, w)
        for n in range(-20, 21):
            assert (n in P) == coset_contains(gens, rep, power(w, n))
        if not P.empty and P.period:
            assert 0 <= P.offset < P.period


letter = st.sampled_from(["a", "a^-1", "b", "b^-1"])
word_st = st.lists(letter, max_size=5).map(lambda xs: free_reduce(W(" ".join(xs))))


@settings(max_examples=80, deadline=None)
@given(st.lists(word_st, max_size=3), word_st, word_st)
def test_coset_contains_translation_invariance(gens, rep, w):
    # w in <X> r  iff  w r^-1 in <X>
    assert coset_contains(gens, rep, w) == coset_contains(gens, EMPTY, free_reduce(w + invert(rep)))
    assert coset_contains(gens, rep, rep)
