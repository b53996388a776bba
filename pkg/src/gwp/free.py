"""Stallings foldings for free vertex groups.

Provides coset membership and the intersection of a finitely generated coset
with a cyclic subgroup, returned as an arithmetic progression of exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .errors import InputError, InternalError
from .words import EMPTY, Letter, Word, cyclic_decompose, free_reduce, invert, power


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        a, b = self.find(a), self.find(b)
        if a == b:
            return a
        if b < a:
            a, b = b, a
        self.parent[b] = a
        return a


class FoldedGraph:
    """Deterministic involutive graph labeled by single letters.

    ``edges[v]`` maps a letter to the unique target vertex; the inverse
    letter is stored at the target. ``endpoint`` is the coset endpoint
    (equal to ``basepoint`` when the representative is trivial).
    """

    def __init__(self, edges: dict[int, dict[Letter, int]], basepoint: int, endpoint: int):
        self.edges = edges
        self.basepoint = basepoint
        self.endpoint = endpoint

    @property
    def vertices(self) -> list[int]:
        return list(self.edges)

    def read(self, w: Sequence[Letter], start: Optional[int] = None) -> Optional[int]:
        """Follow ``w`` from ``start``; None if some letter has no edge."""
        v = self.basepoint if start is None else start
        for letter in w:
            v = self.edges[v].get(letter)
            if v is None:
                return None
        return v

    def is_deterministic(self) -> bool:
        # dict keys make out-labels unique; check the involution is consistent
        return all(self.edges[t].get(x.inverse()) == v
                   for v, out in self.edges.items() for x, t in out.items())

    def __repr__(self) -> str:
        n = sum(len(out) for out in self.edges.values()) // 2
        return f"FoldedGraph(|V|={len(self.edges)}, |E|={n})"


def _same_alphabet(words: Sequence[Word], known=None) -> None:
    if known is None:
        return
    for w in words:
        for letter in w:
            if letter.symbol not in known:
                raise InputError(f"letter {letter.symbol!r} outside the vertex alphabet")


def fold(gens: Sequence[Word], rep: Word = EMPTY) -> FoldedGraph:
    """Fold the bouquet of ``gens`` with a thorn reading ``rep``."""
    uf = _UnionFind()
    raw: list[tuple[int, Letter, int]] = []
    base = uf.make()

    def thread(word: Word, start: int, end: Optional[int]) -> int:
        at = start
        for k, letter in enumerate(word):
            nxt = end if (end is not None and k == len(word) - 1) else uf.make()
            raw.append((at, letter, nxt))
            at = nxt
        return at

    for g in gens:
        g = free_reduce(g)
        if g:
            thread(g, base, base)
    endpoint = thread(free_reduce(rep), base, None)

    # adjacency keyed by representative; merge conflicting targets until stable
    out: dict[int, dict[Letter, int]] = {}
    pending = []
    for s, x, t in raw:
        pending.append((s, x, t))
        pending.append((t, x.inverse(), s))
    while pending:
        s, x, t = pending.pop()
        s, t = uf.find(s), uf.find(t)
        slot = out.setdefault(s, {})
        other = slot.get(x)
        if other is None:
            slot[x] = t
            continue
        other = uf.find(other)
        if other == t:
            slot[x] = t
            continue
        keep = uf.union(other, t)
        gone = t if keep == other else other
        slot[x] = keep
        # re-queue everything hanging off the absorbed vertex
        for y, u in out.pop(gone, {}).items():
            pending.append((keep, y, u))
    edges: dict[int, dict[Letter, int]] = {}
    for s, slot in out.items():
        if uf.find(s) != s:
            continue
        edges[s] = {x: uf.find(t) for x, t in slot.items()}
    for v in (uf.find(base), uf.find(endpoint)):
        edges.setdefault(v, {})
    # canonical renumbering: BFS from the basepoint in sorted letter order
    order = {uf.find(base): 0}
    queue = [uf.find(base)]
    for v in queue:
        for x in sorted(edges[v]):
            t = edges[v][x]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    for v in edges:
        if v not in order:
            order[v] = len(order)
    renumbered = {order[v]: {x: order[t] for x, t in sorted(slot.items())}
                  for v, slot in sorted(edges.items(), key=lambda kv: order[kv[0]])}
    return FoldedGraph(dict(sorted(renumbered.items())), 0, order[uf.find(endpoint)])


@lru_cache(maxsize=4096)
def _subgroup_graph(gens: tuple) -> FoldedGraph:
    return fold(gens, EMPTY)


def subgroup_contains(gens: Sequence[Word], w: Word) -> bool:
    G = _subgroup_graph(tuple(free_reduce(g) for g in gens))
    return G.read(free_reduce(w)) == G.basepoint


def coset_contains(gens: Sequence[Word], rep: Word, w: Word, known=None) -> bool:
    """Decide ``w in <gens> * rep`` in the free group."""
    _same_alphabet(list(gens) + [rep, w], known)
    return subgroup_contains(gens, tuple(w) + invert(rep))


@dataclass(frozen=True)
class ZProgression:
    """``{offset + k * period}``; ``period == 0`` is a singleton."""

    empty: bool = False
    offset: int = 0
    period: int = 0

    @classmethod
    def make(cls, offset: int, period: int) -> "ZProgression":
        period = abs(period)
        if period:
            offset %= period
        return cls(False, offset, period)

    def __contains__(self, n: int) -> bool:
        if self.empty:
            return False
        if self.period == 0:
            return n == self.offset
        return (n - self.offset) % self.period == 0

    def __str__(self) -> str:
        if self.empty:
            return "{}"
        if self.period == 0:
            return "{%d}" % self.offset
        return f"{self.offset} + {self.period}Z"


ZProgression.EMPTY = ZProgression(True)


def intersect_cyclic(gens: Sequence[Word], rep: Word, w: Word, known=None) -> ZProgression:
    """Exponents ``n`` with ``w^n in <gens> * rep``."""
    _same_alphabet(list(gens) + [rep, w], known)
    w = free_reduce(w)
    if not w:
        raise InputError("intersect_cyclic needs a nontrivial word")
    G = fold(tuple(free_reduce(g) for g in gens), rep)
    target = G.endpoint
    u, c = cyclic_decompose(w)
    u_inv = invert(u)

    hits = set()
    if G.basepoint == target:
        hits.add(0)
    start = G.read(u)
    period = 0
    if start is not None:
        for sign, step in ((1, c), (-1, invert(c))):
            v = start
            # the power map is injective, so the orbit is a path or a cycle through start
            for n in range(1, len(G.edges) + 2):
                v = G.read(step, v)
                if v is None:
                    break
                if G.read(u_inv, v) == target:
                    hits.add(sign * n)
                if v == start:
                    period = n
                    break
    if not hits:
        return ZProgression.EMPTY
    if period:
        hits = {n for n in hits if -period <= n <= period}
        residues = {n % period for n in hits}
        d = 0
        base = min(residues)
        for r in residues:
            d = gcd(d, r - base)
        d = gcd(d, period)
        result = ZProgression.make(base, d)
        expected = {r for r in range(period) if r in result}
        if expected != residues:
            raise InternalError(f"hit set {sorted(residues)} mod {period} is not a progression")
        return result
    if len(hits) != 1:
        raise InternalError(f"finite hit set {sorted(hits)} is not a coset of Z")
    return ZProgression.make(hits.pop(), 0)
