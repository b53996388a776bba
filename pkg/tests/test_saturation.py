import pytest

from conftest import W
from gwp.automaton import DualAutomaton, export_dot
from gwp.brute import brute_member
from gwp.errors import InputError, RoundCapExceeded
from gwp.gog import check_cycle_type, concat, inverse, is_trivial, validate
from gwp.saturation import (SaturationState, Verdict, build_membership_instance, decide, run,
                            sample_accepted, saturate, step1, step2)

FREE2 = {"vertices": [{"name": "v", "kind": "free", "generators": ["a", "b"]}],
         "edges": [], "basepoint": "v"}


def instance(G, K, g):
    return build_membership_instance(G, [G.cycle(k) for k in K], G.cycle(g))


def test_build_instance_shapes(bs12):
    S = instance(bs12, ["a"], "e a e^-1")
    A = S.automaton
    # initial vertex, two thorn interior vertices, terminal vertex
    assert len(A.vertices) == 4 and len(A.edges) == 8
    assert sum(1 for e in A.edges if e.forward and e.source == e.target == A.initial) == 1
    assert not S.trivially_member

    assert instance(bs12, [], "").trivially_member
    assert instance(bs12, [], "").verdict is Verdict.MEMBER

    S = instance(bs12, ["a"], "a^5")
    assert len(S.automaton.vertices) == 6
    thorn = [e.label for e in S.automaton.edges if e.forward and e.source != e.target]
    assert thorn == [W("a^-1")] * 5


def test_build_instance_rejects_wrong_base(trefoil):
    c = check_cycle_type(trefoil, W("y"), base="w")
    with pytest.raises(InputError):
        build_membership_instance(trefoil, [], c)


def test_step1_cancelling_path():
    G = validate(FREE2)
    A = DualAutomaton(G.sort_of)
    for _ in range(3):
        A.add_vertex()
    A.initial, A.terminal = 0, 2
    A.add_edge(0, 1, W("a"))
    A.add_edge(1, 2, W("a^-1"))
    S = SaturationState(G, A)
    assert step1(S)
    assert A.has_one_edge(0, 2) and not A.has_one_edge(0, 1)
    assert not step1(S)


def test_step1_separate_components():
    G = validate(FREE2)
    A = DualAutomaton(G.sort_of)
    A.initial, A.terminal = A.add_vertex(), A.add_vertex()
    assert not step1(SaturationState(G, A))


def test_step2_bridges_thorn(bs12):
    S = instance(bs12, ["a"], "e a e^-1")
    A = S.automaton
    assert not step1(S)
    assert step2(S)
    added = {(e.source, e.target, e.label) for e in A.edges if e.forward and e.id >= 8}
    assert (A.initial, A.terminal, W("a^-2")) in added
    # the self-pair at the vertex after e carries a loop: e^-1 a^2 e = a
    assert (1, 1, W("a")) in added
    assert step1(S) and A.has_one_edge(A.initial, A.terminal)
    # memoized cosets unchanged, so a further sweep is a no-op
    assert not step2(S)
    assert is_trivial(bs12, concat(bs12.cycle("e a e^-1"), bs12.cycle("a^-2")))


def test_step2_disconnected_targets(bs12):
    S = instance(bs12, [], "e a e")
    assert not step2(S) and not step1(S)
    assert saturate(S).verdict is Verdict.NON_MEMBER


@pytest.mark.parametrize("group, K, g, verdict", [
    ("bs12", ["a"], "e a e^-1", Verdict.MEMBER),
    ("bs12", ["a"], "e^-1 a e", Verdict.NON_MEMBER),
    ("bs12", ["a"], "e a^3 e^-1", Verdict.MEMBER),
    ("bs12", ["e"], "a", Verdict.NON_MEMBER),
    ("bs23", ["a"], "e a^2 e^-1", Verdict.MEMBER),
    ("bs23", ["a"], "e a e^-1", Verdict.NON_MEMBER),
    ("trefoil", ["x^2"], "e y^3 e^-1", Verdict.MEMBER),
    ("trefoil", ["x^2"], "e y e^-1", Verdict.NON_MEMBER),
    ("free_ab", ["a e b e^-1"], "a e b e^-1", Verdict.MEMBER),
    ("free_ab", ["a^2", "a e b e^-1"], "e b e^-1 a", Verdict.NON_MEMBER),
])
def test_decide_examples(request, group, K, g, verdict):
    G = request.getfixturevalue(group)
    assert decide(G, K, g, audit=True) is verdict


def test_decide_raag(p3):
    G, tr = p3
    a, c = G.cycle(tr["a"]), G.cycle(tr["c"])
    assert decide(G, [a], c) is Verdict.NON_MEMBER
    assert decide(G, [a, c], concat(c, a)) is Verdict.MEMBER
    assert decide(G, [a, c], concat(concat(c, a), inverse(c))) is Verdict.MEMBER


def test_trefoil_cross_check(trefoil):
    S = run(trefoil, ["x^2"], "e y^3 e^-1", audit=True)
    A = S.automaton
    assert A.has_one_edge(A.initial, A.terminal)
    assert is_trivial(trefoil, trefoil.cycle("e y^3 e^-1 x^-2"))


def test_rank0_edges_only_add_one_edges(free_ab):
    for K, g in [(["a e b e^-1"], "a e b e^-1"),
                 (["a^2", "a e b e^-1"], "a^2 e b e^-1 a^-2"),
                 (["e b e^-1", "a"], "e b^-1 e^-1 a^3 e b^2 e^-1")]:
        S = instance(free_ab, K, g)
        built = len(S.automaton.edges)
        saturate(S)
        assert all(e.is_one for e in S.automaton.edges[built:])
        assert all("step2" not in line or "[1]" in line for line in S.trace)


def test_saturate_already_saturated(bs12):
    S = run(bs12, ["a"], "e^-1 a e")
    rounds = S.rounds
    saturate(S)
    assert S.rounds == rounds + 1


def test_round_cap(bs12):
    with pytest.raises(RoundCapExceeded):
        run(bs12, ["a"], "e a e^-1", max_rounds=1)


def test_determinism(trefoil):
    snaps = []
    for _ in range(2):
        frames = []
        S = run(trefoil, ["x^2", "x e y e^-1"], "e y^3 e^-1 x", on_round=lambda n, A: frames.append(export_dot(A)))
        snaps.append((frames, S.trace))
    assert snaps[0] == snaps[1]


def test_vertex_count_constant(bs23):
    S = run(bs23, ["a^3", "e a^2 e^-1"], "e a^4 e^-1 a")
    assert len(S.automaton.vertices) == S.vertex_count


def test_sampled_labels_lie_in_coset(bs12):
    K = [bs12.cycle("a")]
    g = bs12.cycle("e a e^-1")
    S = run(bs12, K, g)
    samples = sample_accepted(S, k=30, seed=1)
    assert samples
    for c in samples:
        # a label l is accepted iff l g lies in K
        result = brute_member(bs12, K, concat(c, g), depth=6)
        assert result.found, str(c)
