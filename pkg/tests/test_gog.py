import random

import pytest

from conftest import W
from gwp import catalog
from gwp.errors import InputError, ValidationError
from gwp.gog import (britton_reduce, check_cycle_type, concat, fundamental_generators, inverse,
                     is_trivial, validate)
from gwp.words import EMPTY, Letter, format_word, invert, power
from reps import BS12_IDENTITY, IDENTITY, bs12_image, trefoil_image


def cyc(G, text):
    return check_cycle_type(G, W(text))


def test_validate_bs12(bs12):
    assert list(bs12.groups) == ["v"] and list(bs12.edges) == ["e"]
    assert bs12.edges["e"].rank == 1 and bs12.tree == []


def test_validate_rejects_rank2_edge_into_free_vertex():
    spec = {
        "vertices": [{"name": "u", "kind": "free", "generators": ["x", "z"]},
                     {"name": "w", "kind": "free_abelian", "generators": ["p", "q"]}],
        "edges": [{"name": "e", "from": "u", "to": "w", "edge_generators": ["c", "d"],
                   "alpha": {"c": "x", "d": "z"}, "omega": {"c": "p", "d": "q"}}],
        "basepoint": "u",
    }
    with pytest.raises(ValidationError) as info:
        validate(spec)
    assert any("abelian subgroup of free group must be cyclic" in v for v in info.value.violations)


def test_validate_rejects_shared_generator():
    spec = {"vertices": [{"name": "u", "kind": "free", "generators": ["a"]},
                         {"name": "w", "kind": "free", "generators": ["a"]}],
            "edges": [{"name": "e", "from": "u", "to": "w", "edge_generators": [],
                       "alpha": {}, "omega": {}}],
            "basepoint": "u"}
    with pytest.raises(ValidationError):
        validate(spec)


@pytest.mark.parametrize("mutate, message", [
    (lambda s: s.update(edges=[]) or s["vertices"].append(
        {"name": "w", "kind": "free", "generators": ["b"]}), "graph not connected"),
    (lambda s: s.update(vertices=[], edges=[]), "graph is empty"),
    (lambda s: s.update(basepoint="nowhere"), "unknown basepoint"),
    (lambda s: s["edges"][0].update(omega={"c": "a^0"}), "e"),
    (lambda s: s["edges"][0].update(alpha={"c": [0]}), "e"),
])
def test_validate_violations(mutate, message):
    spec = catalog.baumslag_solitar(1, 2)
    mutate(spec)
    with pytest.raises(ValidationError) as info:
        validate(spec)
    assert any(message in v for v in info.value.violations)


def test_validate_accepts_vector_images():
    spec = catalog.baumslag_solitar(1, 2)
    spec["edges"][0]["alpha"] = {"c": [2]}
    G = validate(spec)
    assert is_trivial(G, cyc(G, "e a e^-1 a^-2"))


def test_check_cycle_type_examples(bs12, trefoil):
    c = cyc(bs12, "e a e^-1")
    assert c.w0 == EMPTY and c.n == 2
    assert c.segments == ((Letter("e"), W("a")), (Letter("e", -1), EMPTY))
    d = cyc(bs12, "a")
    assert d.n == 0 and d.w0 == W("a")
    with pytest.raises(InputError):
        cyc(trefoil, "y^3")
    with pytest.raises(InputError):
        cyc(trefoil, "e y")
    assert str(cyc(trefoil, "x e y^3 e^-1")) == "x e y^3 e^-1"


def test_fundamental_generators():
    one = validate({"vertices": [{"name": "v", "kind": "free", "generators": ["a", "b"]}],
                    "edges": [], "basepoint": "v"})
    assert [str(g) for g in fundamental_generators(one)] == ["a", "b"]
    bs = validate(catalog.baumslag_solitar(1, 2))
    assert [str(g) for g in fundamental_generators(bs)] == ["a", "e"]
    fp = validate(catalog.free_product())
    assert [str(g) for g in fundamental_generators(fp)] == ["a", "e b e^-1"]
    for G in (one, bs, fp):
        for g in fundamental_generators(G):
            assert check_cycle_type(G, g.word()) == g


def test_britton_examples(bs12):
    assert britton_reduce(bs12, cyc(bs12, "e a e^-1")) == cyc(bs12, "a^2")
    assert bs12_image(W("e a e^-1")) == bs12_image(W("a^2"))
    assert britton_reduce(bs12, cyc(bs12, "e e^-1")) == cyc(bs12, "")
    c = cyc(bs12, "e^-1 a e")
    assert britton_reduce(bs12, c) == c
    nested = cyc(bs12, "e e a e^-1 e^-1")
    assert britton_reduce(bs12, nested) == cyc(bs12, "a^4")


def test_is_trivial_examples(bs12, trefoil):
    assert is_trivial(bs12, cyc(bs12, "e a e^-1 a^-2"))
    assert not is_trivial(bs12, cyc(bs12, "a"))
    assert is_trivial(bs12, cyc(bs12, ""))
    assert is_trivial(trefoil, cyc(trefoil, "e y^3 e^-1 x^-2"))
    assert not is_trivial(trefoil, cyc(trefoil, "e y e^-1 x^-1"))


def test_concat_and_inverse(trefoil):
    c = cyc(trefoil, "x e y e^-1 x^-1")
    d = cyc(trefoil, "e y^-1 e^-1")
    assert concat(c, d).word() == c.word() + d.word()
    assert inverse(c).word() == invert(c.word())
    assert is_trivial(trefoil, concat(c, inverse(c)))


def random_bs12(rng, edges):
    out = []
    for _ in range(edges):
        out += power(W("a"), rng.randint(-3, 3))
        out.append(Letter("e", rng.choice([1, -1])))
    out += power(W("a"), rng.randint(-3, 3))
    return tuple(out)


def random_trefoil(rng, pairs):
    out = list(power(W("x"), rng.randint(-3, 3)))
    for _ in range(pairs):
        out += [Letter("e")] + list(power(W("y"), rng.randint(-4, 4))) + [Letter("e", -1)]
        out += power(W("x"), rng.randint(-3, 3))
    return tuple(out)


def relator_insertion(rng, w, relators):
    """Insert a relator at a random cut point where the path sits at the basepoint."""
    depth, cuts = 0, [0]
    for k, letter in enumerate(w, 1):
        if letter.symbol == "e":
            depth += letter.sign
        if depth == 0:
            cuts.append(k)
    i = rng.choice(cuts)
    r = rng.choice(relators)
    if rng.random() < 0.5:
        r = invert(r)
    return w[:i] + r + w[i:]


def test_is_trivial_agrees_with_bs12_representation(bs12):
    rng = random.Random(7)
    for trial in range(400):
        w = random_bs12(rng, rng.randint(0, 6))
        if trial % 2:
            # force a trivial word: w * (w with an inserted relator)^-1
            base = random_bs12(rng, rng.randint(0, 2))
            w = base + invert(relator_insertion(rng, base, [W("e a e^-1 a^-2")]))
        c = check_cycle_type(bs12, w)
        assert is_trivial(bs12, c) == (bs12_image(w) == BS12_IDENTITY), format_word(w)
        r = britton_reduce(bs12, c)
        assert bs12_image(r.word()) == bs12_image(w)


def test_is_trivial_agrees_with_trefoil_representation(trefoil):
    rng = random.Random(11)
    for trial in range(300):
        w = random_trefoil(rng, rng.randint(0, 3))
        if trial % 2:
            base = random_trefoil(rng, 1)
            w = base + invert(relator_insertion(rng, base, [W("e y^3 e^-1 x^-2")]))
        c = check_cycle_type(trefoil, w)
        assert is_trivial(trefoil, c) == (trefoil_image(w) == IDENTITY), format_word(w)
        assert trefoil_image(britton_reduce(trefoil, c).word()) == trefoil_image(w)


def test_pinch_count_bound(bs12, rng):
    for _ in range(200):
        c = check_cycle_type(bs12, random_bs12(rng, rng.randint(0, 6)))
        stats = {}
        r = britton_reduce(bs12, c, stats)
        assert stats["pinches"] <= c.n // 2
        assert r.n == c.n - 2 * stats["pinches"]
        assert britton_reduce(bs12, r) == r
