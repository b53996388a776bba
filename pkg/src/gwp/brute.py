"""Breadth-first semi-decision for subgroup membership, used as a test oracle.

Only positive answers are conclusive: a witness is a product of subgroup
generators equal to the queried element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError, InternalError
from .gog import CycleTypeWord, GraphOfGroups, britton_reduce, concat, inverse, is_trivial
from .words import format_word

DEFAULT_DEPTH_CAP = 8


@dataclass(frozen=True)
class BruteResult:
    witness: Optional[tuple]  # ((generator index, +1/-1), ...) or None
    depth: int
    factors: tuple = ()  # the generator words, for rendering

    @property
    def found(self) -> bool:
        return self.witness is not None

    def expression(self) -> str:
        parts = []
        for i, sign in self.witness:
            text = str(self.factors[i])
            if len(text.split()) > 1:
                text = f"({text})"
            parts.append(text if sign > 0 else f"{text}^-1")
        return " ".join(parts)

    def __str__(self) -> str:
        if self.found:
            return f'WITNESS "{self.expression()}"'
        return f"NOT-FOUND-UP-TO({self.depth})"


def brute_member(G: GraphOfGroups, K_gens: Sequence[CycleTypeWord], g: CycleTypeWord,
                 depth: int = 4, cap: int = DEFAULT_DEPTH_CAP) -> BruteResult:
    """Search products of at most ``depth`` generators (or inverses) equal to ``g``."""
    if depth < 0 or depth > cap:
        raise InputError(f"depth must be between 0 and {cap}")
    K = list(K_gens)
    factors = [(i, s, k if s > 0 else inverse(k)) for i, k in enumerate(K) for s in (1, -1)]
    g_inv = inverse(g)
    identity = CycleTypeWord(G.basepoint, ())

    def hit(product: CycleTypeWord) -> bool:
        return is_trivial(G, concat(product, g_inv))

    if hit(identity):
        return BruteResult((), depth, tuple(K))
    seen = {str(britton_reduce(G, identity))}
    frontier = [((), identity)]
    for _ in range(depth):
        nxt = []
        for expr, product in frontier:
            for i, s, k in factors:
                if expr and expr[-1] == (i, -s):
                    continue
                candidate = britton_reduce(G, concat(product, k))
                key = str(candidate)
                if key in seen:
                    continue
                seen.add(key)
                e = expr + ((i, s),)
                if hit(candidate):
                    result = BruteResult(e, depth, tuple(K))
                    _verify(G, K, g, result)
                    return result
                nxt.append((e, candidate))
        frontier = nxt
    return BruteResult(None, depth, tuple(K))


def _verify(G: GraphOfGroups, K, g: CycleTypeWord, result: BruteResult) -> None:
    product = CycleTypeWord(G.basepoint, ())
    for i, s in result.witness:
        product = concat(product, K[i] if s > 0 else inverse(K[i]))
    if not is_trivial(G, concat(product, inverse(g))):
        raise InternalError(f"witness {result.expression()} does not multiply to {format_word(g.word())}")
