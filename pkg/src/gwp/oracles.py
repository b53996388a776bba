"""Vertex-group oracles consumed by the saturation engine.

Edge groups are always Z^m. A vertex group is either free or free abelian on
its declared generators; each supports coset membership and intersection of
a coset with the image of an incident edge group, expressed in edge-group
coordinates as a :class:`~gwp.lattice.LatticeCoset`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .automaton import VertexCoset
from .errors import InputError
from .free import coset_contains, intersect_cyclic
from .lattice import IntMatrix, LatticeCoset, coset_contains_ab, preimage_coset
from .words import EMPTY, Letter, Word, free_reduce, power

FREE = "free"
FREE_ABELIAN = "free_abelian"

EdgeCoset = LatticeCoset


@dataclass(frozen=True)
class EdgeEndMap:
    """One end of an edge: the monomorphism ``Z^rank -> G_vertex``.

    For an abelian target ``matrix`` holds the images as columns; for a free
    target ``words`` holds at most one nontrivial reduced word.
    """

    edge: str
    end: str  # "alpha" or "omega"
    vertex: str
    rank: int
    matrix: Optional[IntMatrix] = None
    words: tuple = ()


class VertexGroup:
    kind: str

    def __init__(self, name: str, generators: Sequence[str]):
        self.name = name
        self.generators = tuple(generators)
        self._gens = set(self.generators)

    def check_word(self, w: Word) -> None:
        for letter in w:
            if letter.symbol not in self._gens:
                raise InputError(f"letter {letter.symbol!r} is not a generator of vertex {self.name!r}")

    def check_coset(self, coset: VertexCoset) -> None:
        if coset.empty:
            return
        for g in coset.generators:
            self.check_word(g)
        self.check_word(coset.representative)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, {list(self.generators)})"


class FreeGroup(VertexGroup):
    kind = FREE

    def normalize(self, w: Word) -> Word:
        return free_reduce(w)

    def contains(self, coset: VertexCoset, w: Word) -> bool:
        self.check_coset(coset)
        self.check_word(w)
        if coset.empty:
            return False
        return coset_contains(coset.generators, coset.representative, w)

    def intersect_edge_image(self, coset: VertexCoset, end: EdgeEndMap) -> LatticeCoset:
        if end.rank > 1:
            raise InputError("abelian subgroup of free group must be cyclic")
        self.check_coset(coset)
        if coset.empty:
            return LatticeCoset.empty_coset(end.rank)
        if end.rank == 0:
            if self.contains(coset, EMPTY):
                return LatticeCoset.make((), [], 0)
            return LatticeCoset.empty_coset(0)
        prog = intersect_cyclic(coset.generators, coset.representative, end.words[0])
        if prog.empty:
            return LatticeCoset.empty_coset(1)
        return LatticeCoset.make((prog.offset,), [(prog.period,)] if prog.period else [], 1)

    def embed(self, end: EdgeEndMap, t: Sequence[int]) -> Word:
        if end.rank == 0:
            return EMPTY
        return power(end.words[0], t[0])


class FreeAbelianGroup(VertexGroup):
    kind = FREE_ABELIAN

    def __init__(self, name: str, generators: Sequence[str]):
        super().__init__(name, generators)
        self._index = {g: i for i, g in enumerate(self.generators)}

    @property
    def dim(self) -> int:
        return len(self.generators)

    def vector(self, w: Word) -> tuple:
        self.check_word(w)
        v = [0] * self.dim
        for letter in w:
            v[self._index[letter.symbol]] += letter.sign
        return tuple(v)

    def word(self, v: Sequence[int]) -> Word:
        out: list[Letter] = []
        for g, n in zip(self.generators, v):
            out.extend([Letter(g, 1 if n > 0 else -1)] * abs(n))
        return tuple(out)

    def normalize(self, w: Word) -> Word:
        return self.word(self.vector(w))

    def lattice_coset(self, coset: VertexCoset) -> LatticeCoset:
        if coset.empty:
            return LatticeCoset.empty_coset(self.dim)
        return LatticeCoset.make(self.vector(coset.representative),
                                 [self.vector(g) for g in coset.generators], self.dim)

    def contains(self, coset: VertexCoset, w: Word) -> bool:
        self.check_coset(coset)
        return coset_contains_ab(self.lattice_coset(coset), self.vector(w))

    def intersect_edge_image(self, coset: VertexCoset, end: EdgeEndMap) -> LatticeCoset:
        self.check_coset(coset)
        return preimage_coset(end.matrix, self.lattice_coset(coset))

    def embed(self, end: EdgeEndMap, t: Sequence[int]) -> Word:
        return self.word(end.matrix.apply(tuple(t)))


def make_group(name: str, kind: str, generators: Sequence[str]) -> VertexGroup:
    if kind == FREE:
        return FreeGroup(name, generators)
    if kind == FREE_ABELIAN:
        return FreeAbelianGroup(name, generators)
    raise InputError(f"unknown vertex kind {kind!r}")


def vertex_contains(group: VertexGroup, coset: VertexCoset, w: Word) -> bool:
    return group.contains(coset, w)


def intersect_edge_image(group: VertexGroup, coset: VertexCoset, end: EdgeEndMap) -> EdgeCoset:
    if end.vertex != group.name:
        raise InputError(f"end map of {end.edge!r} targets {end.vertex!r}, not {group.name!r}")
    return group.intersect_edge_image(coset, end)


def embed(group: VertexGroup, end: EdgeEndMap, t: Sequence[int]) -> Word:
    if len(t) != end.rank:
        raise InputError(f"edge element of length {len(t)} for rank {end.rank}")
    return group.embed(end, t)


def coset_transfer(to_group: VertexGroup, to_end: EdgeEndMap, C: EdgeCoset) -> tuple[Word, list[Word]]:
    """Image of an edge coset on the ``to_end`` side as (representative, subgroup generators)."""
    if C.empty:
        raise InputError("cannot transfer the empty coset")
    rep = embed(to_group, to_end, C.offset)
    gens = [embed(to_group, to_end, col) for col in C.basis]
    return rep, gens


def coset_generators(to_group: VertexGroup, to_end: EdgeEndMap, C: EdgeCoset) -> list[Word]:
    """Coset generators of the transferred coset: the representative and each ``gen * rep``.

    Edge groups are abelian, so ``gen * rep`` is computed in edge coordinates.
    """
    if C.empty:
        raise InputError("cannot transfer the empty coset")
    out = [embed(to_group, to_end, C.offset)]
    for col in C.basis:
        shifted = tuple(a + b for a, b in zip(C.offset, col))
        out.append(embed(to_group, to_end, shifted))
    return out
