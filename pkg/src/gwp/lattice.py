"""Exact integer lattice arithmetic for free-abelian vertex and edge groups.

Conventions: a lattice is spanned by the *columns* of a matrix, and the
canonical basis is the lower-triangular column Hermite normal form
(positive pivots, entries left of a pivot reduced into ``[0, pivot)``).
All arithmetic uses Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError

Vector = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError("matrix is not rectangular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        columns = [tuple(int(x) for x in c) for c in columns]
        if any(len(c) != nrows for c in columns):
            raise InputError("column length mismatch")
        return cls(nrows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, x: Sequence[int]) -> Vector:
        if len(x) != self.cols:
            raise InputError(f"vector of length {len(x)} for {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(r, x)) for r in self.entries)


def _axpy(a: int, x: list[int], y: list[int]) -> None:
    """y += a * x in place."""
    if a:
        for i, xi in enumerate(x):
            y[i] += a * xi


def _column_hnf(columns: list[list[int]], nrows: int):
    """Return (H, U, pivots) with B U = [H | 0] and H in column HNF.

    ``H`` and ``U`` are lists of columns; ``U`` is unimodular (m x m) and its
    trailing ``m - rank`` columns span the kernel of ``B``.
    """
    A = [list(c) for c in columns]
    m = len(A)
    U = [[int(i == j) for i in range(m)] for j in range(m)]
    k = 0
    pivots: list[int] = []
    for i in range(nrows):
        if k == m:
            break
        while True:
            live = [j for j in range(k, m) if A[j][i] != 0]
            if not live:
                break
            j0 = min(live, key=lambda j: (abs(A[j][i]), j))
            A[k], A[j0] = A[j0], A[k]
            U[k], U[j0] = U[j0], U[k]
            clean = True
            for j in range(k + 1, m):
                if A[j][i]:
                    q = A[j][i] // A[k][i]
                    _axpy(-q, A[k], A[j])
                    _axpy(-q, U[k], U[j])
                    if A[j][i]:
                        clean = False
            if clean:
                break
        if A[k][i] == 0:
            continue
        if A[k][i] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
        for j in range(k):
            q = A[j][i] // A[k][i]
            _axpy(-q, A[k], A[j])
            _axpy(-q, U[k], U[j])
        pivots.append(i)
        k += 1
    return A[:k], U, pivots


def hnf(B: IntMatrix) -> IntMatrix:
    """Column Hermite normal form; zero columns are dropped (result is n x rank)."""
    H, _, _ = _column_hnf(B.columns(), B.rows)
    return IntMatrix.from_columns(H, B.rows)


def rank(B: IntMatrix) -> int:
    return hnf(B).cols


def solve(B: IntMatrix, t: Sequence[int]) -> Optional[Vector]:
    """Some integer ``x`` with ``B x = t``, or None."""
    t = tuple(int(v) for v in t)
    if len(t) != B.rows:
        raise InputError("right-hand side has the wrong length")
    H, U, pivots = _column_hnf(B.columns(), B.rows)
    y: list[int] = []
    for k, p in enumerate(pivots):
        residual = t[p] - sum(H[j][p] * y[j] for j in range(k))
        q, r = divmod(residual, H[k][p])
        if r:
            return None
        y.append(q)
    for i in range(B.rows):
        if sum(H[j][i] * y[j] for j in range(len(H))) != t[i]:
            return None
    x = [0] * B.cols
    for j, yj in enumerate(y):
        _axpy(yj, U[j], x)
    return tuple(x)


def kernel(B: IntMatrix) -> list[Vector]:
    """A Z-basis of ``{x : B x = 0}``."""
    H, U, _ = _column_hnf(B.columns(), B.rows)
    return [tuple(c) for c in U[len(H):]]


@dataclass(frozen=True)
class LatticeCoset:
    """``offset + L`` in Z^dim, canonical; ``offset is None`` means empty.

    ``basis`` holds the HNF columns of ``L`` and ``offset`` is reduced
    against the pivots, so equal cosets have equal encodings.
    """

    dim: int
    offset: Optional[Vector]
    basis: tuple = ()

    @classmethod
    def make(cls, offset: Sequence[int], generators: Sequence[Sequence[int]], dim: Optional[int] = None) -> "LatticeCoset":
        offset = tuple(int(v) for v in offset)
        if dim is None:
            dim = len(offset)
        if len(offset) != dim or any(len(g) != dim for g in generators):
            raise InputError("dimension mismatch")
        H, _, pivots = _column_hnf([list(g) for g in generators], dim)
        o = list(offset)
        for col, p in zip(H, pivots):
            _axpy(-(o[p] // col[p]), col, o)
        return cls(dim, tuple(o), tuple(tuple(c) for c in H))

    @classmethod
    def empty_coset(cls, dim: int) -> "LatticeCoset":
        return cls(dim, None, ())

    @classmethod
    def whole(cls, dim: int) -> "LatticeCoset":
        return cls.make((0,) * dim, IntMatrix.identity(dim).columns(), dim)

    @property
    def empty(self) -> bool:
        return self.offset is None

    def basis_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.basis, self.dim)

    def __contains__(self, p) -> bool:
        return coset_contains_ab(self, p)

    def issubset(self, other: "LatticeCoset") -> bool:
        if self.dim != other.dim:
            raise InputError("dimension mismatch")
        if self.empty:
            return True
        if other.empty or self.offset not in other:
            return False
        zero = (0,) * self.dim
        sub = LatticeCoset(other.dim, zero, other.basis)
        return all(col in sub for col in self.basis)

    def elements(self, coefficients: Sequence[int]) -> Vector:
        """``offset + sum(c_i * basis_i)``."""
        if self.empty:
            raise InputError("empty coset has no elements")
        x = list(self.offset)
        for c, col in zip(coefficients, self.basis):
            _axpy(c, list(col), x)
        return tuple(x)

    def __str__(self) -> str:
        if self.empty:
            return "{}"
        if not self.basis:
            return str(self.offset)
        return f"{self.offset} + <{', '.join(map(str, self.basis))}>"


def coset_contains_ab(C: LatticeCoset, p: Sequence[int]) -> bool:
    p = tuple(p)
    if len(p) != C.dim:
        raise InputError(f"point of dimension {len(p)} in a coset of dimension {C.dim}")
    if C.empty:
        return False
    diff = tuple(a - b for a, b in zip(p, C.offset))
    return solve(C.basis_matrix(), diff) is not None


def preimage_coset(M: IntMatrix, C: LatticeCoset) -> LatticeCoset:
    """``{x in Z^m : M x in C}`` for an injective ``M`` (n x m)."""
    if M.rows != C.dim:
        raise InputError("matrix rows do not match the coset dimension")
    m = M.cols
    if rank(M) != m:
        raise InputError("end map is not injective")
    if C.empty:
        return LatticeCoset.empty_coset(m)
    stacked = M.columns() + [tuple(-v for v in col) for col in C.basis]
    A = IntMatrix.from_columns(stacked, M.rows)
    z = solve(A, C.offset)
    if z is None:
        return LatticeCoset.empty_coset(m)
    gens = [k[:m] for k in kernel(A)]
    return LatticeCoset.make(z[:m], gens, m)
