"""Graphs of groups with free / free-abelian vertex groups and Z^m edge groups.

Spec documents are plain dicts (the JSON schema used by the CLI)::

    {"vertices": [{"name": "v", "kind": "free_abelian", "generators": ["a"]}],
     "edges": [{"name": "e", "from": "v", "to": "v", "edge_generators": ["c"],
                "alpha": {"c": "a^2"}, "omega": {"c": "a"}}],
     "basepoint": "v"}

An edge letter ``e`` runs from ``from`` to ``to`` and satisfies
``e omega(c) e^-1 = alpha(c)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .automaton import VertexCoset
from .errors import InputError, ValidationError
from .lattice import IntMatrix, rank
from .oracles import (FREE, FREE_ABELIAN, EdgeEndMap, FreeAbelianGroup, VertexGroup,
                      embed, intersect_edge_image, make_group)
from .words import EMPTY, Letter, SymbolTable, Word, format_word, free_reduce, invert, parse_word


@dataclass(frozen=True)
class GraphEdge:
    name: str
    source: str
    target: str
    generators: tuple
    alpha: EdgeEndMap
    omega: EdgeEndMap

    @property
    def rank(self) -> int:
        return len(self.generators)


class GraphOfGroups:
    """A validated graph of groups; build it with :func:`validate`."""

    def __init__(self, groups: dict, edges: dict, basepoint: str, tree: list, table: SymbolTable):
        self.groups: dict[str, VertexGroup] = groups
        self.edges: dict[str, GraphEdge] = edges
        self.basepoint = basepoint
        self.tree = tree
        self.table = table
        self._paths = self._tree_paths()

    @property
    def vertices(self) -> list[str]:
        return list(self.groups)

    def group(self, v: str) -> VertexGroup:
        return self.groups[v]

    def sort_of(self, symbol: str):
        return self.table.sort_of(symbol)

    def is_edge_letter(self, letter: Letter) -> bool:
        return letter.symbol in self.edges

    def origin(self, y: Letter) -> str:
        e = self.edges[y.symbol]
        return e.source if y.sign > 0 else e.target

    def terminus(self, y: Letter) -> str:
        e = self.edges[y.symbol]
        return e.target if y.sign > 0 else e.source

    def omega_end(self, y: Letter) -> EdgeEndMap:
        e = self.edges[y.symbol]
        return e.omega if y.sign > 0 else e.alpha

    def alpha_end(self, y: Letter) -> EdgeEndMap:
        e = self.edges[y.symbol]
        return e.alpha if y.sign > 0 else e.omega

    def tree_path(self, v: str) -> Word:
        """Edge letters of the tree geodesic from the basepoint to ``v``."""
        return self._paths[v]

    def _tree_paths(self) -> dict:
        paths = {self.basepoint: EMPTY}
        tree = set(self.tree)
        queue = deque([self.basepoint])
        while queue:
            v = queue.popleft()
            for e in self.edges.values():
                if e.name not in tree:
                    continue
                for y in (Letter(e.name, 1), Letter(e.name, -1)):
                    if self.origin(y) == v and self.terminus(y) not in paths:
                        paths[self.terminus(y)] = paths[v] + (y,)
                        queue.append(self.terminus(y))
        return paths

    def cycle(self, text: str, base: Optional[str] = None) -> "CycleTypeWord":
        return check_cycle_type(self, parse_word(text, self.table), base)

    def __repr__(self) -> str:
        return f"GraphOfGroups(vertices={self.vertices}, edges={list(self.edges)}, basepoint={self.basepoint!r})"


def _parse_image(group: VertexGroup, value, table: SymbolTable) -> object:
    """An end-map image: a word for free targets, an exponent vector for abelian ones."""
    if isinstance(value, str):
        w = parse_word(value, table)
        group.check_word(w)
        if group.kind == FREE_ABELIAN:
            return group.vector(w)
        return free_reduce(w)
    if isinstance(value, (list, tuple)) and all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        if group.kind != FREE_ABELIAN:
            raise InputError(f"vector image given for free vertex {group.name!r}")
        if len(value) != len(group.generators):
            raise InputError(f"vector {list(value)} has wrong length for vertex {group.name!r}")
        return tuple(value)
    raise InputError(f"cannot read end-map image {value!r}")


def _end_map(edge: str, end: str, group: VertexGroup, gens: Sequence[str], images: Mapping, table) -> EdgeEndMap:
    if not isinstance(images, Mapping) or set(images) != set(gens):
        raise InputError(f"edge {edge!r}: {end} must map exactly the edge generators {list(gens)}")
    values = [_parse_image(group, images[g], table) for g in gens]
    m = len(gens)
    if group.kind == FREE:
        if m > 1:
            raise InputError(f"edge {edge!r}: abelian subgroup of free group must be cyclic "
                             f"(rank {m} edge group at free vertex {group.name!r})")
        if m == 1 and not values[0]:
            raise InputError(f"edge {edge!r}: {end} map is not injective (trivial image)")
        return EdgeEndMap(edge, end, group.name, m, words=tuple(values))
    M = IntMatrix.from_columns(values, len(group.generators))
    if rank(M) != m:
        raise InputError(f"edge {edge!r}: {end} map is not injective")
    return EdgeEndMap(edge, end, group.name, m, matrix=M)


def validate(spec: Mapping) -> GraphOfGroups:
    """Build a :class:`GraphOfGroups` from a spec dict, or raise :class:`ValidationError`."""
    problems: list[str] = []
    if not isinstance(spec, Mapping):
        raise ValidationError(["spec must be a JSON object"])
    vertices = spec.get("vertices") or []
    edges = spec.get("edges") or []
    if not vertices:
        raise ValidationError(["graph is empty"])

    table = SymbolTable()
    groups: dict[str, VertexGroup] = {}
    for v in vertices:
        try:
            name, kind, gens = v["name"], v.get("kind", FREE), list(v.get("generators", []))
        except (KeyError, TypeError):
            problems.append(f"malformed vertex entry {v!r}")
            continue
        if name in groups:
            problems.append(f"duplicate vertex name {name!r}")
            continue
        try:
            groups[name] = make_group(name, kind, gens)
        except InputError as exc:
            problems.append(str(exc))
            continue
        for g in gens:
            if g in table:
                problems.append(f"generator name {g!r} used twice")
                continue
            try:
                table.declare(g, name)
            except InputError as exc:
                problems.append(str(exc))

    graph_edges: dict[str, GraphEdge] = {}
    for e in edges:
        try:
            name, src, dst = e["name"], e["from"], e["to"]
            egens = list(e.get("edge_generators", []))
        except (KeyError, TypeError):
            problems.append(f"malformed edge entry {e!r}")
            continue
        if name in graph_edges or name in table:
            problems.append(f"edge name {name!r} clashes with another name")
            continue
        if src not in groups or dst not in groups:
            problems.append(f"edge {name!r} has an unknown endpoint")
            continue
        if len(set(egens)) != len(egens):
            problems.append(f"edge {name!r} repeats an edge generator")
            continue
        try:
            table.declare(name, SymbolTable.EDGE)
        except InputError as exc:
            problems.append(str(exc))
            continue
        try:
            alpha = _end_map(name, "alpha", groups[src], egens, e.get("alpha", {}), table)
            omega = _end_map(name, "omega", groups[dst], egens, e.get("omega", {}), table)
        except InputError as exc:
            problems.append(str(exc))
            continue
        graph_edges[name] = GraphEdge(name, src, dst, tuple(egens), alpha, omega)

    basepoint = spec.get("basepoint", next(iter(groups), None))
    if basepoint not in groups:
        problems.append(f"unknown basepoint {basepoint!r}")
    if problems:
        raise ValidationError(problems)

    # BFS spanning tree, edges in declaration order
    seen = {basepoint}
    tree: list[str] = []
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for e in graph_edges.values():
            for a, b in ((e.source, e.target), (e.target, e.source)):
                if a == v and b not in seen:
                    seen.add(b)
                    tree.append(e.name)
                    queue.append(b)
    if len(seen) != len(groups):
        raise ValidationError(["graph not connected"])
    return GraphOfGroups(groups, graph_edges, basepoint, tree, table)


@dataclass(frozen=True)
class CycleTypeWord:
    """``w0 y1 w1 ... yn wn`` with ``y1...yn`` a closed path at ``base``."""

    base: str
    w0: Word
    segments: tuple = ()  # ((edge letter, vertex word), ...)

    @property
    def n(self) -> int:
        return len(self.segments)

    def word(self) -> Word:
        out = list(self.w0)
        for y, w in self.segments:
            out.append(y)
            out.extend(w)
        return tuple(out)

    def __str__(self) -> str:
        return format_word(self.word())


def check_cycle_type(G: GraphOfGroups, w: Word, base: Optional[str] = None) -> CycleTypeWord:
    """Split ``w`` into cycle-type shape at ``base`` (default: the basepoint)."""
    base = G.basepoint if base is None else base
    here = base
    w0: list[Letter] = []
    segments: list[tuple[Letter, list[Letter]]] = []
    current = w0
    for letter in w:
        sort = G.sort_of(letter.symbol)
        if sort == SymbolTable.EDGE:
            if G.origin(letter) != here:
                raise InputError(f"edge letter {letter} leaves {G.origin(letter)!r}, path is at {here!r}")
            here = G.terminus(letter)
            segments.append((letter, []))
            current = segments[-1][1]
        elif sort != here:
            raise InputError(f"letter {letter} of vertex {sort!r} appears at vertex {here!r}")
        else:
            current.append(letter)
    if here != base:
        raise InputError(f"edge path ends at {here!r}, not at {base!r}")
    return CycleTypeWord(base, tuple(w0), tuple((y, tuple(s)) for y, s in segments))


def concat(a: CycleTypeWord, b: CycleTypeWord) -> CycleTypeWord:
    if a.base != b.base:
        raise InputError("cycle-type words at different basepoints")
    if not a.segments:
        return CycleTypeWord(a.base, a.w0 + b.w0, b.segments)
    segs = list(a.segments)
    y, w = segs[-1]
    segs[-1] = (y, w + b.w0)
    return CycleTypeWord(a.base, a.w0, tuple(segs) + b.segments)


def inverse(c: CycleTypeWord) -> CycleTypeWord:
    if not c.segments:
        return CycleTypeWord(c.base, invert(c.w0))
    words = [c.w0] + [w for _, w in c.segments]
    letters = [y for y, _ in c.segments]
    segs = tuple((letters[i].inverse(), invert(words[i])) for i in reversed(range(len(letters))))
    return CycleTypeWord(c.base, invert(words[-1]), segs)


def fundamental_generators(G: GraphOfGroups) -> list[CycleTypeWord]:
    gens = []
    for v, group in G.groups.items():
        p = G.tree_path(v)
        for x in group.generators:
            gens.append(check_cycle_type(G, p + (Letter(x),) + invert(p)))
    tree = set(G.tree)
    for e in G.edges.values():
        if e.name in tree:
            continue
        w = G.tree_path(e.source) + (Letter(e.name),) + invert(G.tree_path(e.target))
        gens.append(check_cycle_type(G, w))
    return gens


def edge_preimage(G: GraphOfGroups, y: Letter, w: Word):
    """Edge-group coordinates of ``w`` if it lies in the omega-image of ``y``, else None."""
    end = G.omega_end(y)
    group = G.group(end.vertex)
    C = intersect_edge_image(group, VertexCoset(end.vertex, (), w), end)
    return None if C.empty else C.offset


def britton_reduce(G: GraphOfGroups, c: CycleTypeWord, stats: Optional[dict] = None) -> CycleTypeWord:
    """Remove pinches ``y w y^-1`` with ``w`` in the edge image, leftmost first.

    Vertex words in the result are normalized (freely reduced, or sorted
    exponent form for abelian vertices).
    """
    here = c.base
    w0 = G.group(here).normalize(c.w0)
    stack: list[tuple[Letter, Word]] = []
    pinches = 0
    for y, w in c.segments:
        if stack and stack[-1][0] == y.inverse():
            top_y, top_w = stack[-1]
            t = edge_preimage(G, top_y, top_w)
            if t is not None:
                stack.pop()
                pinches += 1
                a_end = G.alpha_end(top_y)
                group = G.group(a_end.vertex)
                moved = embed(group, a_end, t)
                if stack:
                    py, pw = stack[-1]
                    stack[-1] = (py, group.normalize(pw + moved + w))
                else:
                    w0 = group.normalize(w0 + moved + w)
                continue
        stack.append((y, G.group(G.terminus(y)).normalize(w)))
    if stats is not None:
        stats["pinches"] = stats.get("pinches", 0) + pinches
    return CycleTypeWord(c.base, w0, tuple(stack))


def is_trivial(G: GraphOfGroups, c: CycleTypeWord) -> bool:
    r = britton_reduce(G, c)
    return r.n == 0 and not r.w0


def canonical_key(G: GraphOfGroups, c: CycleTypeWord) -> str:
    """String form of the reduced word; equal keys imply equal elements."""
    return format_word(britton_reduce(G, c).word())
