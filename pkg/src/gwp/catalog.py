"""Spec dicts for a few standard graphs of groups."""

from __future__ import annotations

from .raag import SimpleGraph, compile_gog


def baumslag_solitar(m: int, n: int) -> dict:
    """BS(m, n) = <a, e | e a^m e^-1 = a^n> as an HNN extension of Z."""
    return {
        "vertices": [{"name": "v", "kind": "free_abelian", "generators": ["a"]}],
        "edges": [{"name": "e", "from": "v", "to": "v", "edge_generators": ["c"],
                   "alpha": {"c": f"a^{n}"}, "omega": {"c": f"a^{m}"}}],
        "basepoint": "v",
    }


def torus_knot(p: int = 2, q: int = 3) -> dict:
    """<x, y | x^p = y^q> as an amalgam Z *_Z Z; the trefoil is (2, 3).

    The cycle-type form of ``y`` at the basepoint is ``e y e^-1``.
    """
    return {
        "vertices": [{"name": "u", "kind": "free", "generators": ["x"]},
                     {"name": "w", "kind": "free", "generators": ["y"]}],
        "edges": [{"name": "e", "from": "u", "to": "w", "edge_generators": ["c"],
                   "alpha": {"c": f"x^{p}"}, "omega": {"c": f"y^{q}"}}],
        "basepoint": "u",
    }


def free_product(left=("a",), right=("b",), kind: str = "free") -> dict:
    """Free product as a two-vertex graph with a trivial (rank-0) edge group.

    Generators of the right factor appear at the basepoint as ``e x e^-1``.
    """
    return {
        "vertices": [{"name": "u", "kind": kind, "generators": list(left)},
                     {"name": "w", "kind": kind, "generators": list(right)}],
        "edges": [{"name": "e", "from": "u", "to": "w", "edge_generators": [],
                   "alpha": {}, "omega": {}}],
        "basepoint": "u",
    }


def raag(vertices, edges) -> tuple[dict, dict]:
    return compile_gog(SimpleGraph(list(vertices), {frozenset(e) for e in edges}))


def raag_p3() -> tuple[dict, dict]:
    """A(a - b - c) = Z^2 *_Z Z^2."""
    return raag("abc", [("a", "b"), ("b", "c")])
