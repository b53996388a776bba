"""Dual automata: Serre graphs with involutive word labels.

Every edge is stored together with its inverse; both share one label up to
inversion. Edges with the empty label ("1-edges") belong to every vertex
alphabet at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import InputError
from .words import EMPTY, Word, format_word, free_reduce, invert

DEFAULT_SORT = "*"


def _default_sort(symbol: str):
    return DEFAULT_SORT


@dataclass(frozen=True)
class Edge:
    id: int
    source: int
    target: int
    label: Word
    inverse: int
    sort: object  # None for 1-edges
    forward: bool  # True for the representative of the involution orbit

    @property
    def is_one(self) -> bool:
        return not self.label


@dataclass(frozen=True)
class VertexCoset:
    """The coset ``<generators> * representative`` of one vertex group.

    ``representative is None`` denotes the empty coset.
    """

    vertex: object
    generators: tuple = ()
    representative: Optional[Word] = EMPTY

    @classmethod
    def empty_coset(cls, vertex=DEFAULT_SORT) -> "VertexCoset":
        return cls(vertex, (), None)

    @property
    def empty(self) -> bool:
        return self.representative is None


class DualAutomaton:
    """Finite dual automaton with word labels.

    ``sort_of`` maps a generator symbol to its alphabet (vertex tag, or the
    edge-letter sort). All letters of a label must share one sort.
    """

    def __init__(self, sort_of: Callable[[str], object] = _default_sort):
        self.sort_of = sort_of
        self.vertices: list[int] = []
        self.edges: list[Edge] = []
        self._out: dict[int, list[int]] = {}
        self._ones: set[tuple[int, int]] = set()
        self.initial: int = -1
        self.terminal: int = -1
        self.version = 0

    def add_vertex(self) -> int:
        v = len(self.vertices)
        self.vertices.append(v)
        self._out[v] = []
        self.version += 1
        return v

    def label_sort(self, label: Word):
        if not label:
            return None
        sorts = {self.sort_of(letter.symbol) for letter in label}
        if len(sorts) != 1:
            raise InputError(f"label {format_word(label)!r} mixes alphabets")
        return sorts.pop()

    def add_edge(self, p: int, q: int, label: Word) -> int:
        """Add ``p --label--> q`` and its inverse; return the forward edge id."""
        if p not in self._out or q not in self._out:
            raise InputError(f"unknown vertex {p if p not in self._out else q}")
        label = tuple(label)
        sort = self.label_sort(label)
        i = len(self.edges)
        self.edges.append(Edge(i, p, q, label, i + 1, sort, True))
        self.edges.append(Edge(i + 1, q, p, invert(label), i, sort, False))
        self._out[p].append(i)
        self._out[q].append(i + 1)
        if not label:
            self._ones.add((p, q))
            self._ones.add((q, p))
        self.version += 1
        return i

    def has_one_edge(self, p: int, q: int) -> bool:
        return (p, q) in self._ones

    def out_edges(self, v: int) -> list[Edge]:
        return [self.edges[i] for i in self._out[v]]

    def copy(self) -> "DualAutomaton":
        other = DualAutomaton(self.sort_of)
        other.vertices = list(self.vertices)
        other.edges = list(self.edges)
        other._out = {v: list(ids) for v, ids in self._out.items()}
        other._ones = set(self._ones)
        other.initial, other.terminal = self.initial, self.terminal
        return other

    def __repr__(self) -> str:
        return (f"DualAutomaton(|V|={len(self.vertices)}, |E|={len(self.edges) // 2}, "
                f"initial={self.initial}, terminal={self.terminal})")


def build_coset_automaton(subgroup_gens: Iterable[Word], rep: Word,
                          sort_of: Callable[[str], object] = _default_sort) -> DualAutomaton:
    """Literal automaton recognizing ``<subgroup_gens> * rep``.

    One subdivided circle per generator based at the initial vertex, and a
    subdivided thorn reading ``rep`` to a fresh terminal vertex (a single
    1-edge when ``rep`` is empty).
    """
    A = DualAutomaton(sort_of)
    base = A.add_vertex()
    A.initial = base
    for gen in subgroup_gens:
        gen = tuple(gen)
        if not gen:
            continue
        at = base
        for k, letter in enumerate(gen):
            nxt = base if k == len(gen) - 1 else A.add_vertex()
            A.add_edge(at, nxt, (letter,))
            at = nxt
    rep = tuple(rep)
    if not rep:
        A.terminal = A.add_vertex()
        A.add_edge(base, A.terminal, EMPTY)
        return A
    at = base
    for letter in rep:
        nxt = A.add_vertex()
        A.add_edge(at, nxt, (letter,))
        at = nxt
    A.terminal = at
    return A


def _check_vertex(A: DualAutomaton, v: int) -> None:
    if v not in A._out:
        raise InputError(f"unknown vertex {v}")


def restrict(A: DualAutomaton, sort, p: int, q: int) -> DualAutomaton:
    """Sub-automaton of edges labeled over one alphabet (plus 1-edges), from p to q."""
    _check_vertex(A, p)
    _check_vertex(A, q)
    B = DualAutomaton(A.sort_of)
    for _ in A.vertices:
        B.add_vertex()
    for e in A.edges:
        if e.forward and (e.sort is None or e.sort == sort):
            B.add_edge(e.source, e.target, e.label)
    B.initial, B.terminal = p, q
    return B


@dataclass
class Component:
    """Spanning-tree data for one connected component.

    ``path[v]`` is the tree-path label from ``root`` to ``v``; ``loops`` are
    the fundamental-loop labels at the root (freely reduced, nontrivial).
    """

    root: int
    path: dict = field(default_factory=dict)
    loops: list = field(default_factory=list)


def spanning_components(A: DualAutomaton, sort, roots: Iterable[int] = ()) -> dict[int, Component]:
    """BFS spanning forest over edges of one alphabet plus 1-edges.

    Components are rooted at the first vertex of ``roots`` they contain,
    otherwise at their smallest vertex. Returns a map vertex -> Component.
    """
    owner: dict[int, Component] = {}
    tree_edges: set[int] = set()
    order = list(roots) + [v for v in A.vertices]
    for start in order:
        if start in owner:
            continue
        comp = Component(start, {start: EMPTY})
        owner[start] = comp
        queue = deque([start])
        members = [start]
        while queue:
            v = queue.popleft()
            for e in A.out_edges(v):
                if e.sort is not None and e.sort != sort:
                    continue
                if e.target not in owner:
                    owner[e.target] = comp
                    comp.path[e.target] = comp.path[v] + e.label
                    tree_edges.add(e.id)
                    tree_edges.add(e.inverse)
                    members.append(e.target)
                    queue.append(e.target)
        for v in members:
            for e in A.out_edges(v):
                if not e.forward or e.id in tree_edges:
                    continue
                if e.sort is not None and e.sort != sort:
                    continue
                loop = free_reduce(comp.path[v] + e.label + invert(comp.path[e.target]))
                if loop:
                    comp.loops.append(loop)
    return owner


def extract_coset(A: DualAutomaton) -> VertexCoset:
    """Coset generators for the language of a single-alphabet automaton.

    The spanning tree is a BFS from the initial vertex with edges taken in
    insertion order, so the output is deterministic.
    """
    sorts = {e.sort for e in A.edges if e.sort is not None}
    if len(sorts) > 1:
        raise InputError("extract_coset needs labels over a single alphabet")
    sort = sorts.pop() if sorts else DEFAULT_SORT
    owner = spanning_components(A, sort, roots=[A.initial])
    comp = owner[A.initial]
    if owner[A.terminal] is not comp:
        return VertexCoset.empty_coset(sort)
    return VertexCoset(sort, tuple(comp.loops), free_reduce(comp.path[A.terminal]))


def add_one_edge(A: DualAutomaton, p: int, q: int) -> bool:
    """Add a 1-edge p -> q (with inverse) unless one exists. Returns True if added."""
    if p == q:
        raise InputError("1-loops are never added")
    _check_vertex(A, p)
    _check_vertex(A, q)
    if A.has_one_edge(p, q):
        return False
    A.add_edge(p, q, EMPTY)
    return True


def _dot_label(label: Word) -> str:
    if not label:
        return "1"
    return " ".join(str(letter) for letter in label)


def export_dot(A: DualAutomaton, name: str = "automaton") -> str:
    """Deterministic DOT text, one arc per inverse pair."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in A.vertices:
        if v == A.initial:
            shape = "diamond"
        elif v == A.terminal:
            shape = "doublecircle"
        else:
            shape = "circle"
        lines.append(f"  v{v} [shape={shape}];")
    for e in A.edges:
        if e.forward:
            lines.append(f'  v{e.source} -> v{e.target} [label="{_dot_label(e.label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
