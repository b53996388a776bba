"""Chordal graphs and their right-angled Artin groups as graphs of groups.

A chordal graph's maximal cliques arranged in a clique tree give an iterated
amalgam of free-abelian groups: one ``Z^|C|`` vertex per clique, one
``Z^|separator|`` edge per tree edge. Empty separators (disconnected
graphs) become rank-0 edges, i.e. free products.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InputError
from .words import valid_name


@dataclass
class SimpleGraph:
    vertices: list
    edges: set = field(default_factory=set)  # set of frozenset pairs

    def __post_init__(self):
        self.vertices = list(self.vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate graph vertex")
        names = set(self.vertices)
        clean = set()
        for e in self.edges:
            pair = frozenset(e)
            if len(pair) != 2:
                raise InputError(f"loop or malformed edge {sorted(e)!r}")
            if not pair <= names:
                raise InputError(f"edge {sorted(pair)!r} uses an unknown vertex")
            clean.add(pair)
        self.edges = clean
        self.adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            self.adj[a].add(b)
            self.adj[b].add(a)

    @classmethod
    def from_json(cls, doc: Mapping) -> "SimpleGraph":
        try:
            vertices = [str(v) for v in doc["vertices"]]
            edges = [tuple(str(x) for x in e) for e in doc.get("edges", [])]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed graph document: {exc}") from None
        for v in vertices:
            if not valid_name(v) or "@" in v:
                raise InputError(f"invalid graph vertex name {v!r}")
        return cls(vertices, {frozenset(e) for e in edges})

    def adjacent(self, a, b) -> bool:
        return b in self.adj[a]

    def is_clique(self, vs: Iterable) -> bool:
        return all(self.adjacent(a, b) for a, b in combinations(list(vs), 2))


def lex_bfs(G: SimpleGraph) -> list:
    """Lexicographic BFS by partition refinement; ties broken by vertex order."""
    order = []
    parts: list[list] = [list(G.vertices)]
    while parts:
        v = parts[0].pop(0)
        if not parts[0]:
            parts.pop(0)
        order.append(v)
        refined = []
        for part in parts:
            inside = [u for u in part if G.adjacent(u, v)]
            outside = [u for u in part if not G.adjacent(u, v)]
            refined.extend(p for p in (inside, outside) if p)
        parts = refined
    return order


def is_perfect_elimination(G: SimpleGraph, order: Sequence) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    return all(G.is_clique([u for u in G.adj[v] if pos[u] > pos[v]]) for v in order)


def is_chordal(G: SimpleGraph) -> Optional[list]:
    """A perfect elimination ordering, or None if the graph is not chordal."""
    peo = list(reversed(lex_bfs(G)))
    return peo if is_perfect_elimination(G, peo) else None


def find_chordless_cycle(G: SimpleGraph) -> Optional[list]:
    """An induced cycle of length >= 4, or None.

    For each vertex ``v`` and non-adjacent neighbors ``x, y``, a shortest
    ``x``-``y`` path avoiding ``v`` and its other neighbors closes a chordless
    cycle through ``v``.
    """
    for v in G.vertices:
        nbrs = [u for u in G.vertices if G.adjacent(v, u)]
        for x, y in combinations(nbrs, 2):
            if G.adjacent(x, y):
                continue
            banned = (G.adj[v] | {v}) - {x, y}
            parent = {x: None}
            queue = deque([x])
            while queue and y not in parent:
                a = queue.popleft()
                for b in G.vertices:
                    if b in G.adj[a] and b not in banned and b not in parent:
                        parent[b] = a
                        queue.append(b)
            if y in parent:
                path = []
                node = y
                while node is not None:
                    path.append(node)
                    node = parent[node]
                return [v] + path[::-1]
    return None


@dataclass
class CliqueTree:
    cliques: list  # list of frozensets
    edges: list  # (i, j) with i the parent, in BFS order from clique 0

    def separator(self, i: int, j: int) -> frozenset:
        return self.cliques[i] & self.cliques[j]


def maximal_cliques(G: SimpleGraph, peo: Sequence) -> list:
    pos = {v: i for i, v in enumerate(peo)}
    candidates = [frozenset([v] + [u for u in G.adj[v] if pos[u] > pos[v]]) for v in peo]
    maximal = {c for c in candidates if not any(c < d for d in candidates)}
    index = {v: i for i, v in enumerate(G.vertices)}
    return sorted(maximal, key=lambda c: sorted(index[v] for v in c))


def clique_tree(G: SimpleGraph, peo: Optional[Sequence] = None) -> CliqueTree:
    """Clique tree as a maximum-weight spanning tree of the clique intersection graph."""
    if peo is None or not is_perfect_elimination(G, peo):
        peo = is_chordal(G)
        if peo is None:
            raise InputError("graph is not chordal")
    cliques = maximal_cliques(G, peo)
    candidates = sorted(((-len(cliques[i] & cliques[j]), i, j)
                         for i, j in combinations(range(len(cliques)), 2)))
    parent = list(range(len(cliques)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: dict[int, list] = {i: [] for i in range(len(cliques))}
    for _, i, j in candidates:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            adj[i].append(j)
            adj[j].append(i)
    edges = []
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in sorted(adj[i]):
            if j not in seen:
                seen.add(j)
                edges.append((i, j))
                queue.append(j)
    return CliqueTree(cliques, edges)


def has_induced_subtree_property(G: SimpleGraph, T: CliqueTree) -> bool:
    for v in G.vertices:
        holding = {i for i, c in enumerate(T.cliques) if v in c}
        tree_edges = [(i, j) for i, j in T.edges if i in holding and j in holding]
        if len(tree_edges) != len(holding) - 1:
            return False
    return True


def compile_gog(G: SimpleGraph) -> tuple[dict, dict]:
    """Spec dict for A(G) plus a translation table from graph vertices to words."""
    peo = is_chordal(G)
    if peo is None:
        cycle = find_chordless_cycle(G)
        raise InputError("graph is not chordal; not expressible by this compiler"
                         + (f" (chordless cycle {', '.join(cycle)})" if cycle else ""))
    T = clique_tree(G, peo)
    order = {v: i for i, v in enumerate(G.vertices)}
    names = [f"C{i}" for i in range(len(T.cliques))]

    def members(c):
        return sorted(c, key=order.__getitem__)

    spec_vertices = [{"name": names[i], "kind": "free_abelian",
                      "generators": [f"{x}@{names[i]}" for x in members(c)]}
                     for i, c in enumerate(T.cliques)]
    spec_edges = []
    depth_path = {0: []}
    for k, (i, j) in enumerate(T.edges):
        e = f"e{k}"
        sep = members(T.separator(i, j))
        spec_edges.append({
            "name": e, "from": names[i], "to": names[j], "edge_generators": sep,
            "alpha": {x: f"{x}@{names[i]}" for x in sep},
            "omega": {x: f"{x}@{names[j]}" for x in sep},
        })
        depth_path[j] = depth_path[i] + [e]
    translation = {}
    for x in G.vertices:
        # the copy in the clique nearest the root
        home = min((i for i, c in enumerate(T.cliques) if x in c), key=lambda i: (len(depth_path[i]), i))
        path = depth_path[home]
        tokens = path + [f"{x}@{names[home]}"] + [f"{e}^-1" for e in reversed(path)]
        translation[x] = " ".join(tokens)
    spec = {"vertices": spec_vertices, "edges": spec_edges, "basepoint": names[0]}
    return spec, translation
