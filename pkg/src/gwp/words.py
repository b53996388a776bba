"""Letters and words over a finite alphabet with formal inverses.

A word is a plain tuple of :class:`Letter` values, so concatenation is ``+``
and the empty word is ``()``. Words are kept unreduced until
:func:`free_reduce` is called explicitly.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, NamedTuple

from .errors import InputError


class Letter(NamedTuple):
    symbol: str
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.sign)

    def __str__(self) -> str:
        return self.symbol if self.sign > 0 else f"{self.symbol}^-1"


Word = tuple  # tuple[Letter, ...]

EMPTY: Word = ()

# NAME is anything without whitespace or '^'; "1" is reserved for the empty word.
_TOKEN = re.compile(r"^([^\s^]+)(?:\^(.*))?$")


class SymbolTable:
    """Global generator registry mapping each symbol to its sort.

    The sort of a vertex-group generator is the vertex name; edge letters
    have sort :data:`EDGE`. Names are unique across all sorts.
    """

    EDGE = ("edge",)

    def __init__(self, entries: Mapping[str, object] | None = None):
        self._sort: dict[str, object] = {}
        for symbol, sort in (entries or {}).items():
            self.declare(symbol, sort)

    def declare(self, symbol: str, sort) -> None:
        if not valid_name(symbol):
            raise InputError(f"invalid generator name {symbol!r}")
        if symbol in self._sort:
            raise InputError(f"generator name {symbol!r} declared twice")
        self._sort[symbol] = sort

    def sort_of(self, symbol: str):
        try:
            return self._sort[symbol]
        except KeyError:
            raise InputError(f"unknown generator {symbol!r}") from None

    def symbols(self, sort=None) -> list[str]:
        if sort is None:
            return list(self._sort)
        return [s for s, t in self._sort.items() if t == sort]

    def __contains__(self, symbol) -> bool:
        return symbol in self._sort

    def __len__(self) -> int:
        return len(self._sort)


def valid_name(symbol: str) -> bool:
    return symbol != "1" and bool(_TOKEN.match(symbol)) and "^" not in symbol


def word(*letters: Letter) -> Word:
    return tuple(letters)


def free_reduce(w: Iterable[Letter], known=None) -> Word:
    """Cancel adjacent ``x x^-1`` pairs until none remain.

    If ``known`` is given (any container of symbols), undeclared symbols raise
    :class:`InputError`.
    """
    stack: list[Letter] = []
    for letter in w:
        if known is not None and letter.symbol not in known:
            raise InputError(f"unknown generator {letter.symbol!r}")
        if stack and stack[-1].symbol == letter.symbol and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert(w: Word) -> Word:
    return tuple(letter.inverse() for letter in reversed(w))


def power(w: Word, n: int) -> Word:
    if n >= 0:
        return tuple(w) * n
    return invert(w) * (-n)


def is_reduced(w: Word) -> bool:
    return all(not (x.symbol == y.symbol and x.sign == -y.sign) for x, y in zip(w, w[1:]))


def cyclic_decompose(w: Word) -> tuple[Word, Word]:
    """Split a reduced word as ``u c u^-1`` with ``c`` cyclically reduced."""
    w = tuple(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == w[j].inverse():
        i += 1
        j -= 1
    return w[:i], w[i:j + 1]


def parse_word(text: str, known=None) -> Word:
    """Parse ``"a^2 b^-1 c"`` into a letter sequence.

    Tokens are separated by whitespace; each is a generator name optionally
    followed by ``^`` and a nonzero integer. ``"1"`` and ``""`` are the empty
    word. ``known`` (a container of symbols) enables unknown-name checks.
    """
    letters: list[Letter] = []
    tokens = text.split()
    if tokens == ["1"]:
        return EMPTY
    for token in tokens:
        m = _TOKEN.match(token)
        if not m:
            raise InputError(f"malformed token {token!r}")
        name, exponent = m.group(1), m.group(2)
        if name == "1":
            raise InputError("'1' may only appear alone")
        if known is not None and name not in known:
            raise InputError(f"unknown generator {name!r}")
        if exponent is None:
            n = 1
        else:
            try:
                n = int(exponent)
            except ValueError:
                raise InputError(f"malformed exponent in {token!r}") from None
            if n == 0:
                raise InputError(f"zero exponent in {token!r}")
        letters.extend([Letter(name, 1 if n > 0 else -1)] * abs(n))
    return tuple(letters)


def format_word(w: Word) -> str:
    """Render a word with runs collapsed into powers; the empty word is ``"1"``."""
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = (j - i) * w[i].sign
        parts.append(w[i].symbol if n == 1 else f"{w[i].symbol}^{n}")
        i = j
    return " ".join(parts)
