"""Membership in fundamental groups of benign graphs of groups by saturation.

The query ``g in K`` becomes ``1 in K g^-1``. A literal dual automaton for
``K g^-1`` is saturated with two moves until nothing changes:

* step 1 joins ``p != q`` by a 1-edge when the vertex-group coset read
  between them contains the identity;
* step 2 takes two edges ``p -y-> q`` and ``p' -y-> q'``, intersects the coset
  read from ``q`` to ``q'`` with the edge-group image, and carries coset
  generators across the edge as new word-labeled edges ``p -> p'``.

``g in K`` exactly when the saturated automaton has a 1-edge from the
initial to the terminal vertex.
"""

from __future__ import annotations

import enum
import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .automaton import (DualAutomaton, VertexCoset, add_one_edge, build_coset_automaton,
                        extract_coset, restrict, spanning_components)
from .errors import InputError, InternalError, RoundCapExceeded
from .gog import CycleTypeWord, GraphOfGroups, check_cycle_type, is_trivial
from .lattice import LatticeCoset
from .oracles import coset_generators, intersect_edge_image
from .words import EMPTY, Letter, SymbolTable, Word, format_word, free_reduce, invert

log = logging.getLogger(__name__)

DEFAULT_MAX_ROUNDS = 10_000


class Verdict(str, enum.Enum):
    MEMBER = "MEMBER"
    NON_MEMBER = "NON-MEMBER"

    def __str__(self) -> str:
        return self.value


@dataclass
class SaturationState:
    graph: GraphOfGroups
    automaton: DualAutomaton
    trivially_member: bool = False
    # (edge id, edge id) -> EdgeCoset last carried across that edge pair
    memo: dict = field(default_factory=dict)
    rounds: int = 0
    trace: list = field(default_factory=list)
    audit: bool = False
    audit_counts: dict = field(default_factory=lambda: {"step1": 0, "step2": 0, "memo": 0})
    vertex_count: int = 0
    _regions: dict = field(default_factory=dict, repr=False)
    _regions_version: int = -1

    def __post_init__(self):
        self.vertex_count = len(self.automaton.vertices)

    @property
    def verdict(self) -> Verdict:
        A = self.automaton
        if self.trivially_member or A.has_one_edge(A.initial, A.terminal):
            return Verdict.MEMBER
        return Verdict.NON_MEMBER

    def log(self, line: str) -> None:
        self.trace.append(line)
        log.debug(line)

    def regions(self, sort) -> dict:
        """Spanning components of the ``sort``-restriction, cached per automaton version."""
        A = self.automaton
        if self._regions_version != A.version:
            self._regions = {}
            self._regions_version = A.version
        if sort not in self._regions:
            self._regions[sort] = spanning_components(A, sort)
        return self._regions[sort]

    def coset(self, sort, p: int, q: int) -> VertexCoset:
        """The vertex-group coset read by ``sort``-paths from p to q."""
        owner = self.regions(sort)
        comp = owner[p]
        if owner[q] is not comp:
            return VertexCoset.empty_coset(sort)
        tp, tq = comp.path[p], comp.path[q]
        gens = tuple(free_reduce(invert(tp) + h + tp) for h in comp.loops)
        return VertexCoset(sort, gens, free_reduce(invert(tp) + tq))


def build_membership_instance(G: GraphOfGroups, K_gens: Sequence[CycleTypeWord],
                              g: CycleTypeWord, audit: bool = False) -> SaturationState:
    for c in list(K_gens) + [g]:
        if c.base != G.basepoint:
            raise InputError(f"{c} is not of cycle type at {G.basepoint!r}")
    A = build_coset_automaton([k.word() for k in K_gens], invert(g.word()), sort_of=G.sort_of)
    return SaturationState(G, A, trivially_member=not g.word(), audit=audit)


def step1(S: SaturationState) -> bool:
    G, A = S.graph, S.automaton
    changed = False
    for v in G.vertices:
        group = G.group(v)
        owner = S.regions(v)
        seen = set()
        for comp in owner.values():
            if id(comp) in seen:
                continue
            seen.add(id(comp))
            members = sorted(comp.path)
            H = VertexCoset(v, tuple(comp.loops), EMPTY)
            for i, p in enumerate(members):
                for q in members[i + 1:]:
                    if A.has_one_edge(p, q):
                        continue
                    # 1 in tp^-1 H tq  <=>  tp tq^-1 in H
                    if not group.contains(H, comp.path[p] + invert(comp.path[q])):
                        continue
                    if S.audit:
                        _audit_step1(S, v, p, q)
                    add_one_edge(A, p, q)
                    changed = True
                    S.log(f"round {S.rounds} step1 v{p} -> v{q} [1] in {v}")
        # 1-edges inside one component leave every sort-v coset unchanged
    return changed


def _audit_step1(S: SaturationState, v, p: int, q: int) -> None:
    L = extract_coset(restrict(S.automaton, v, p, q))
    if L.empty or not S.graph.group(v).contains(L, EMPTY):
        raise InternalError(f"step 1 added v{p} -> v{q} without 1 in the coset")
    S.audit_counts["step1"] += 1


def _edge_letter_edges(S: SaturationState) -> dict:
    G, A = S.graph, S.automaton
    by_letter: dict[Letter, list] = {}
    for e in A.edges:
        if len(e.label) == 1 and e.sort == SymbolTable.EDGE:
            by_letter.setdefault(e.label[0], []).append(e)
    return by_letter


def step2(S: SaturationState) -> bool:
    G, A = S.graph, S.automaton
    changed = False
    for y, edges in _edge_letter_edges(S).items():
        w_end, a_end = G.omega_end(y), G.alpha_end(y)
        w_group, a_group = G.group(w_end.vertex), G.group(a_end.vertex)
        for e in edges:
            for f in edges:
                L = S.coset(w_end.vertex, e.target, f.target)
                if L.empty:
                    continue
                C = intersect_edge_image(w_group, L, w_end)
                key = (e.id, f.id)
                old = S.memo.get(key)
                if C.empty or old == C:
                    continue
                if old is not None and not old.issubset(C):
                    raise InternalError(f"edge coset for {key} shrank from {old} to {C}")
                S.memo[key] = C
                S.audit_counts["memo"] += 1
                p, pp = e.source, f.source
                for u in coset_generators(a_group, a_end, C):
                    u = a_group.normalize(u)
                    if not u and p == pp:
                        continue
                    if a_group.contains(S.coset(a_end.vertex, p, pp), u):
                        continue
                    if S.audit:
                        _audit_step2(S, y, e, f, C, u)
                    if u:
                        A.add_edge(p, pp, u)
                    else:
                        add_one_edge(A, p, pp)
                    changed = True
                    S.log(f"round {S.rounds} step2 v{p} -> v{pp} [{format_word(u)}] "
                          f"via {y} (edges {e.id},{f.id})")
    return changed


def _audit_step2(S: SaturationState, y: Letter, e, f, C: LatticeCoset, u: Word) -> None:
    """Check the new label equals y w y^-1 for a word w readable from q to q'."""
    G = S.graph
    w_end, a_end = G.omega_end(y), G.alpha_end(y)
    w_group, a_group = G.group(w_end.vertex), G.group(a_end.vertex)
    L = extract_coset(restrict(S.automaton, w_end.vertex, e.target, f.target))
    for t in [C.offset] + [tuple(a + b for a, b in zip(C.offset, col)) for col in C.basis]:
        w = w_group.embed(w_end, t)
        if not w_group.contains(L, w):
            raise InternalError(f"step 2 transferred {t} which is not read from v{e.target} to v{f.target}")
        if a_group.normalize(a_group.embed(a_end, t)) == u:
            relator = CycleTypeWord(G.origin(y), EMPTY, ((y, w), (y.inverse(), invert(u))))
            if not is_trivial(G, relator):
                raise InternalError(f"transferred label {format_word(u)} differs from {y} w {y}^-1")
            S.audit_counts["step2"] += 1
            return
    raise InternalError(f"label {format_word(u)} is not the image of a coset generator")


def saturate(S: SaturationState, max_rounds: int = DEFAULT_MAX_ROUNDS,
             on_round: Optional[Callable[[int, DualAutomaton], None]] = None) -> SaturationState:
    """Alternate full step-1 and step-2 sweeps until neither changes anything."""
    if on_round:
        on_round(0, S.automaton)
    if S.trivially_member:
        return S
    while True:
        if S.rounds >= max_rounds:
            raise RoundCapExceeded(f"no fixpoint after {max_rounds} rounds")
        S.rounds += 1
        changed = step1(S)
        changed = step2(S) or changed
        if len(S.automaton.vertices) != S.vertex_count:
            raise InternalError("saturation added a vertex")
        if on_round:
            on_round(S.rounds, S.automaton)
        if not changed:
            return S


def decide(G: GraphOfGroups, K_gens: Sequence, g, *, max_rounds: int = DEFAULT_MAX_ROUNDS,
           audit: bool = False, on_round=None) -> Verdict:
    """``MEMBER`` iff ``g`` lies in the subgroup generated by ``K_gens``.

    Words may be given as :class:`CycleTypeWord` or as strings in the word
    grammar; both must be of cycle type at the basepoint.
    """
    S = run(G, K_gens, g, max_rounds=max_rounds, audit=audit, on_round=on_round)
    return S.verdict


def run(G: GraphOfGroups, K_gens: Sequence, g, *, max_rounds: int = DEFAULT_MAX_ROUNDS,
        audit: bool = False, on_round=None) -> SaturationState:
    K = [_as_cycle(G, k) for k in K_gens]
    S = build_membership_instance(G, K, _as_cycle(G, g), audit=audit)
    return saturate(S, max_rounds=max_rounds, on_round=on_round)


def _as_cycle(G: GraphOfGroups, c) -> CycleTypeWord:
    if isinstance(c, CycleTypeWord):
        return c
    if isinstance(c, str):
        return G.cycle(c)
    return check_cycle_type(G, tuple(c))


def sample_accepted(S: SaturationState, k: int = 100, seed: int = 0,
                    max_len: int = 12) -> list[CycleTypeWord]:
    """Labels of up to ``k`` random initial-to-terminal paths, as cycle-type words.

    Each sample is a random walk followed by a BFS path to the terminal vertex.
    """
    A = S.automaton
    rng = random.Random(seed)
    # BFS tree toward the terminal vertex
    toward: dict[int, object] = {A.terminal: None}
    frontier = [A.terminal]
    for v in frontier:
        for e in A.out_edges(v):
            if e.target not in toward:
                toward[e.target] = A.edges[e.inverse]
                frontier.append(e.target)
    if A.initial not in toward:
        return []
    out, seen = [], set()
    for _ in range(k * 4):
        if len(out) >= k:
            break
        v, label = A.initial, []
        for _ in range(rng.randrange(max_len + 1)):
            choices = [e for e in A.out_edges(v) if e.target in toward]
            if not choices:
                break
            e = rng.choice(choices)
            label.extend(e.label)
            v = e.target
        while v != A.terminal:
            e = toward[v]
            label.extend(e.label)
            v = e.target
        c = check_cycle_type(S.graph, tuple(label))
        key = str(c)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out
