"""Exact linear algebra over prime fields F_p and over Q.

Matrices over F_p are stored as int64 numpy arrays with entries reduced to
[0, p); matrices over Q are object arrays of `fractions.Fraction` (always in
lowest terms).  Everything downstream (homology, lifting problems, colimits)
reduces to the four primitives here: rank, solve, kron, quotient.  All
algorithms are deterministic, so identical inputs give bit-identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["Field", "Matrix", "GF2", "GF3", "GF5", "QQ", "quotient"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field: characteristic 0 means Q, otherwise a prime p."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or prime, got {p}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, x):
        """Reduce a Python number to a canonical field element."""
        if self.is_rational:
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.characteristic

    def inv(self, x):
        if self.is_rational:
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1) / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def __str__(self):
        return "Q" if self.is_rational else f"F_{self.characteristic}"


GF2 = Field(2)
GF3 = Field(3)
GF5 = Field(5)
QQ = Field(0)


def _zeros(field: Field, rows: int, cols: int) -> np.ndarray:
    if field.is_rational:
        a = np.empty((rows, cols), dtype=object)
        a[...] = Fraction(0)
        return a
    return np.zeros((rows, cols), dtype=np.int64)


class Matrix:
    """Dense matrix over an exact field.  Treat instances as immutable."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: np.ndarray):
        assert data.ndim == 2
        self.field = field
        self.rows, self.cols = data.shape
        if field.is_rational:
            if data.dtype != object:
                a = np.empty(data.shape, dtype=object)
                for i in range(data.shape[0]):
                    for j in range(data.shape[1]):
                        a[i, j] = Fraction(int(data[i, j]))
                data = a
        else:
            data = np.asarray(data, dtype=np.int64) % field.characteristic
        self.data = data

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(field: Field, rows: list, cols: int | None = None) -> "Matrix":
        """Build from a list of row lists; `cols` disambiguates empty input."""
        nrows = len(rows)
        if nrows == 0:
            return Matrix.zeros(field, 0, 0 if cols is None else cols)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have varying lengths")
        out = _zeros(field, nrows, ncols)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = field.coerce(x)
        return Matrix(field, out)

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        return Matrix(field, _zeros(field, rows, cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        out = _zeros(field, n, n)
        one = field.coerce(1)
        for i in range(n):
            out[i, i] = one
        return Matrix(field, out)

    # -- basics ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        if self.field.is_rational:
            return all(x == 0 for x in self.data.flat)
        return not self.data.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and (self.data == other.data).all()
        )

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    def tolist(self) -> list:
        return [[self.data[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.field.is_rational:
            return a
        return a % self.field.characteristic

    def __add__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field and self.shape == other.shape
        return Matrix(self.field, self.reduce(self.data + other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field and self.shape == other.shape
        return Matrix(self.field, self.reduce(self.data - other.data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.reduce(-self.data))

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, self.reduce(self.data * c))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        p = self.field.characteristic
        # integer matmul in numpy is not BLAS-backed; for small p the product
        # fits float64 exactly, which is orders of magnitude faster
        if p and (p - 1) * (p - 1) * self.cols < 2**52:
            prod = self.data.astype(np.float64) @ other.data.astype(np.float64)
            return Matrix(self.field, prod.astype(np.int64) % p)
        return Matrix(self.field, self.reduce(self.data @ other.data))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def column(self, j: int) -> "Matrix":
        return Matrix(self.field, self.data[:, j : j + 1].copy())

    @staticmethod
    def hstack(field: Field, blocks: list["Matrix"]) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, 0, 0)
        rows = blocks[0].rows
        assert all(b.rows == rows for b in blocks)
        return Matrix(field, np.hstack([b.data for b in blocks]))

    @staticmethod
    def vstack(field: Field, blocks: list["Matrix"]) -> "Matrix":
        if not blocks:
            return Matrix.zeros(field, 0, 0)
        cols = blocks[0].cols
        assert all(b.cols == cols for b in blocks)
        return Matrix(field, np.vstack([b.data for b in blocks]))

    @staticmethod
    def block_diag(field: Field, blocks: list["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = _zeros(field, rows, cols)
        i = j = 0
        for b in blocks:
            out[i : i + b.rows, j : j + b.cols] = b.data
            i += b.rows
            j += b.cols
        return Matrix(field, out)

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        a = self.data.copy()
        p = self.field.characteristic
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            # choose the first nonzero entry in this column at or below r
            piv = None
            for i in range(r, nrows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            inv = self.field.inv(a[r, c])
            if p:
                a[r] = (a[r] * inv) % p
            else:
                a[r] = a[r] * inv
            col = a[:, c].copy()
            col[r] = 0
            if p:
                mask = col != 0
                if mask.any():
                    a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
            else:
                for i in range(nrows):
                    if i != r and col[i] != 0:
                        a[i] = a[i] - col[i] * a[r]
            pivots.append(c)
            r += 1
        return Matrix(self.field, a), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def solve(self, rhs: "Matrix") -> "Matrix | None":
        """Solve self @ x = rhs; None if inconsistent.

        The solution is canonical: free variables are set to zero, so the
        result is a deterministic function of the inputs.
        """
        if rhs.rows != self.rows:
            raise ValueError("rhs has wrong row count")
        aug = Matrix.hstack(self.field, [self, rhs])
        red, pivots = aug.rref()
        n = self.cols
        if any(c >= n for c in pivots):
            return None
        x = _zeros(self.field, n, rhs.cols)
        for i, c in enumerate(pivots):
            x[c, :] = red.data[i, n:]
        return Matrix(self.field, x)

    def kernel(self) -> "Matrix":
        """Matrix whose columns form a basis of the null space."""
        red, pivots = self.rref()
        n = self.cols
        free = [c for c in range(n) if c not in pivots]
        out = _zeros(self.field, n, len(free))
        one = self.field.coerce(1)
        for k, f in enumerate(free):
            out[f, k] = one
            for i, c in enumerate(pivots):
                out[c, k] = self.field.coerce(-red.data[i, f])
        return Matrix(self.field, out)

    def is_injective(self) -> bool:
        return self.rank() == self.cols

    def is_surjective(self) -> bool:
        return self.rank() == self.rows

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, left factor index major."""
        assert self.field == other.field
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        if rows == 0 or cols == 0:
            return Matrix.zeros(self.field, rows, cols)
        out = np.kron(self.data, other.data)
        return Matrix(self.field, self.reduce(out))


def quotient(field: Field, dim: int, relations) -> tuple[int, Matrix]:
    """Quotient of k^dim by the span of the given relation vectors (rows).

    Returns (quotient dimension, projection matrix).  The projection is
    surjective with kernel exactly the span of the relations; the choice of
    basis for the quotient (non-pivot coordinates of the reduced relations)
    is deterministic.
    """
    if isinstance(relations, Matrix):
        rel = relations
    elif isinstance(relations, np.ndarray):
        rel = Matrix(field, relations) if relations.size else Matrix.zeros(field, 0, dim)
    else:
        rel = Matrix.from_rows(field, [list(r) for r in relations], cols=dim)
    if rel.cols != dim:
        raise ValueError("relation vectors have wrong length")
    red, pivots = rel.rref()
    free = [c for c in range(dim) if c not in pivots]
    proj = _zeros(field, len(free), dim)
    one = field.coerce(1)
    for k, f in enumerate(free):
        proj[k, f] = one
    for i, c in enumerate(pivots):
        # e_c = -sum of its free-coordinate tail modulo the relations
        for k, f in enumerate(free):
            proj[k, c] = field.coerce(-red.data[i, f])
    return len(free), Matrix(field, proj)
