"""Dense linear algebra over F_p: echelon form, rank, nullspace, solve."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import inverse_mod


class DenseMatrix:
    """Row-major matrix of residues modulo p. Treated as immutable."""

    __slots__ = ("rows", "p", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], p: int, ncols: int | None = None):
        self.p = p
        self.rows = tuple(tuple(int(v) % p for v in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int, p: int) -> DenseMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int) -> DenseMatrix:
        return cls([[0] * ncols for _ in range(nrows)], p, ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, DenseMatrix)
            and self.p == other.p
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.p, self.ncols, self.rows))

    def __repr__(self):
        return f"DenseMatrix({[list(r) for r in self.rows]}, p={self.p})"

    def transpose(self) -> DenseMatrix:
        cols = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return DenseMatrix(cols, self.p, self.nrows)

    def stack(self, other: DenseMatrix) -> DenseMatrix:
        if other.ncols != self.ncols:
            raise ValueError("column counts differ")
        return DenseMatrix(self.rows + other.rows, self.p, self.ncols)

    def apply(self, v: Sequence[int]) -> list[int]:
        p = self.p
        return [sum(a * b for a, b in zip(r, v)) % p for r in self.rows]

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[list[int]]:
        return nullspace(self)


def row_echelon(M: DenseMatrix) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form. Returns the nonzero rows and their pivot columns."""
    p = M.p
    work = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = inverse_mod(work[r][c], p)
        row = [v * inv % p for v in work[r]]
        work[r] = row
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], row)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(M: DenseMatrix) -> int:
    return len(row_echelon(M)[1])


def nullspace(M: DenseMatrix) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    p = M.p
    rows, pivots = row_echelon(M)
    pivset = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivset:
            continue
        v = [0] * M.ncols
        v[free] = 1
        for row, pc in zip(rows, pivots):
            v[pc] = -row[free] % p
        basis.append(v)
    return basis


def determinant(M: DenseMatrix) -> int:
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    p = M.p
    work = [list(r) for r in M.rows]
    n = M.nrows
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if work[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = -det
        det = det * work[c][c] % p
        inv = inverse_mod(work[c][c], p)
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] * inv % p
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[c])]
    return det % p


@dataclass(frozen=True)
class Solution:
    """Outcome of solve(): a particular solution and the dimension of the solution space.

    ``vector`` is None when the system is inconsistent, in which case ``dimension`` is -1.
    """

    vector: tuple[int, ...] | None
    dimension: int
    kernel: tuple[tuple[int, ...], ...] = ()

    @property
    def consistent(self) -> bool:
        return self.vector is not None


def solve(A: DenseMatrix, b: Sequence[int]) -> Solution:
    if len(b) != A.nrows:
        raise ValueError("right-hand side has wrong length")
    p = A.p
    aug = DenseMatrix([list(r) + [v] for r, v in zip(A.rows, b)], p, A.ncols + 1)
    rows, pivots = row_echelon(aug)
    if pivots and pivots[-1] == A.ncols:
        return Solution(None, -1)
    x = [0] * A.ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[A.ncols]
    kernel = nullspace(A)
    return Solution(tuple(x), len(kernel), tuple(tuple(k) for k in kernel))
