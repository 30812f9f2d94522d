"""Dense exact matrices over Q(zeta_N).

All entries of a :class:`CycMatrix` share one ambient conductor (operands
with mixed conductors are lifted to the lcm on construction), so products can
run through the integer kernel directly.  Matrices are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from .cyclotomic import CycNum
from .kernel import impl as _K


class ShapeError(ValueError):
    pass


class SignedPermutation(NamedTuple):
    perm: tuple[int, ...]   # row i has its nonzero entry in column perm[i]
    signs: tuple[int, ...]  # that entry, +1 or -1


class CycMatrix:
    __slots__ = ("rows", "cols", "entries", "conductor")

    def __init__(self, rows: int, cols: int, entries: Sequence):
        entries = [e if isinstance(e, CycNum) else CycNum.from_rational(Fraction(e))
                   for e in entries]
        if len(entries) != rows * cols:
            raise ShapeError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        n = 1
        for e in entries:
            n = math.lcm(n, e.conductor)
        entries = [e.lift(n) for e in entries]
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))
        object.__setattr__(self, "conductor", n)

    def __setattr__(self, name, value):
        raise AttributeError("CycMatrix is immutable")

    # ---------- construction ----------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "CycMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        return cls(n, n, [CycNum.from_rational(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "CycMatrix":
        z = CycNum.from_rational(0)
        return cls(rows, cols, [z] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[CycNum]) -> "CycMatrix":
        n = len(values)
        z = CycNum.from_rational(0)
        ent = [z] * (n * n)
        for i, v in enumerate(values):
            ent[i * n + i] = v
        return cls(n, n, ent)

    # ---------- access ----------

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[CycNum, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[CycNum, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and \
            all(a == b for a, b in zip(self.entries, other.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"CycMatrix({self.rows}x{self.cols}: {body})"

    # ---------- arithmetic ----------

    def _common(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix", int]:
        n = math.lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n), n

    def lift(self, n: int) -> "CycMatrix":
        if n == self.conductor:
            return self
        return CycMatrix(self.rows, self.cols, [e.lift(n) for e in self.entries])

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in addition")
        a, b, _ = self._common(other)
        return CycMatrix(self.rows, self.cols, [x + y for x, y in zip(a.entries, b.entries)])

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in subtraction")
        a, b, _ = self._common(other)
        return CycMatrix(self.rows, self.cols, [x - y for x, y in zip(a.entries, b.entries)])

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, [-e for e in self.entries])

    def scale(self, c) -> "CycMatrix":
        c = c if isinstance(c, CycNum) else CycNum.from_rational(Fraction(c))
        return CycMatrix(self.rows, self.cols, [c * e for e in self.entries])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b, n = self._common(other)
        tab = _K.table(n)
        k = self.cols
        rows_num = [[e.num for e in a.row(i)] for i in range(a.rows)]
        rows_den = [[e.den for e in a.row(i)] for i in range(a.rows)]
        cols_num = [[e.num for e in b.col(j)] for j in range(b.cols)]
        cols_den = [[e.den for e in b.col(j)] for j in range(b.cols)]
        dot = _K.dot
        out = []
        for i in range(a.rows):
            rn, rd = rows_num[i], rows_den[i]
            for j in range(b.cols):
                num, den = dot(rn, rd, cols_num[j], cols_den[j], tab)
                out.append(CycNum._make(n, num, den))
        return CycMatrix(a.rows, b.cols, out)

    def power(self, e: int) -> "CycMatrix":
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        out = CycMatrix.identity(self.rows)
        base = self
        while e:
            if e & 1:
                out = out @ base
            e >>= 1
            if e:
                base = base @ base
        return out

    # ---------- structural operations ----------

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, [e.conj() for e in self.entries])

    def conj_transpose(self) -> "CycMatrix":
        return self.transpose().conj()

    def galois(self, j: int) -> "CycMatrix":
        return CycMatrix(self.rows, self.cols, [e.galois(j) for e in self.entries])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and \
            all(self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def rank(self) -> int:
        """Rank over Q(zeta_N) by exact Gaussian elimination (first nonzero pivot)."""
        work = [list(self.row(i)) for i in range(self.rows)]
        rank = 0
        for col in range(self.cols):
            piv = next((r for r in range(rank, self.rows) if work[r][col]), None)
            if piv is None:
                continue
            work[rank], work[piv] = work[piv], work[rank]
            inv = work[rank][col].inv()
            work[rank] = [v * inv for v in work[rank]]
            for r in range(rank + 1, self.rows):
                f = work[r][col]
                if f:
                    work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def is_scalar_multiple_of_identity(self) -> Optional[CycNum]:
        """The scalar c when self == c * Id, else None."""
        if self.rows != self.cols:
            return None
        c = self[0, 0]
        for i in range(self.rows):
            for j in range(self.cols):
                if i == j:
                    if self[i, j] != c:
                        return None
                elif self[i, j]:
                    return None
        return c

    def is_signed_permutation(self) -> Optional[SignedPermutation]:
        """Witness when every row and column has a single nonzero entry, +-1."""
        if self.rows != self.cols:
            return None
        n = self.rows
        one = CycNum.from_rational(1)
        perm = [-1] * n
        seen_cols = [False] * n
        for i in range(n):
            hit = None
            for j in range(n):
                v = self[i, j]
                if v:
                    if hit is not None:
                        return None
                    if v == one:
                        hit = (j, 1)
                    elif v == -one:
                        hit = (j, -1)
                    else:
                        return None
            if hit is None:
                return None
            j, _ = hit
            if seen_cols[j]:
                return None
            seen_cols[j] = True
            perm[i] = j
        signs = tuple(1 if self[i, perm[i]] == one else -1 for i in range(n))
        return SignedPermutation(tuple(perm), signs)


# spec-facing aliases

def mat_mul(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a @ b


def mat_scale(c: CycNum, a: CycMatrix) -> CycMatrix:
    return a.scale(c)


def mat_add(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a + b


def mat_sub(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    return a - b


def conj_transpose(a: CycMatrix) -> CycMatrix:
    return a.conj_transpose()


def rank(a: CycMatrix) -> int:
    return a.rank()


def is_signed_permutation(a: CycMatrix) -> Optional[SignedPermutation]:
    return a.is_signed_permutation()
