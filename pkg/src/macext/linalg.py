"""Exact linear algebra over GF(q) and over the integers.

Row-vector convention throughout: a matrix ``M`` with ``r`` rows and ``c``
columns is the map ``v -> v M`` from GF(q)^r to GF(q)^c.  Images are row
spaces, kernels are left null spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .gf import FieldSpec

Row = tuple[int, ...]


@dataclass(frozen=True)
class MatrixFq:
    field: FieldSpec
    nrows: int
    ncols: int
    rows: tuple[Row, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows or any(len(r) != self.ncols for r in self.rows):
            raise ValueError("matrix shape does not match its entries")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "MatrixFq":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if any(not 0 <= x < field.q for x in r):
                raise ValueError(f"entry outside GF({field.q}) encoding range")
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixFq":
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "MatrixFq":
        return cls(field, nrows, ncols, tuple((0,) * ncols for _ in range(nrows)))

    def transpose(self) -> "MatrixFq":
        return MatrixFq(self.field, self.ncols, self.nrows,
                        tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def stack(self, other: "MatrixFq") -> "MatrixFq":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in stack")
        return MatrixFq(self.field, self.nrows + other.nrows, self.ncols, self.rows + other.rows)


def vec_mat(F: FieldSpec, v: Sequence[int], rows: Sequence[Row], ncols: int) -> Row:
    """Row vector v times the matrix given by ``rows``."""
    out = [0] * ncols
    add, mul = F._add, F._mul
    for coef, row in zip(v, rows):
        if coef:
            mrow = mul[coef]
            for j, x in enumerate(row):
                if x:
                    out[j] = add[out[j]][mrow[x]]
    return tuple(out)


def mat_mul(A: MatrixFq, B: MatrixFq) -> MatrixFq:
    if A.ncols != B.nrows:
        raise ValueError(f"cannot multiply {A.nrows}x{A.ncols} by {B.nrows}x{B.ncols}")
    return MatrixFq(A.field, A.nrows, B.ncols, tuple(vec_mat(A.field, r, B.rows, B.ncols) for r in A.rows))


def _rref_rows(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    work = [list(r) for r in rows]
    add, mul, neg = F._add, F._mul, F._neg
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = F.inv(work[r][col])
        if inv != 1:
            work[r] = [mul[inv][x] for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            c = work[i][col]
            if i != r and c:
                scale = mul[neg[c]]
                row = work[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = add[row[j]][scale[prow[j]]]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rref(M: MatrixFq) -> tuple[MatrixFq, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    The returned matrix keeps the shape of ``M``; zero rows sit at the bottom.
    """
    nonzero, pivots = _rref_rows(M.field, M.rows, M.ncols)
    rows = [tuple(r) for r in nonzero] + [(0,) * M.ncols] * (M.nrows - len(nonzero))
    return MatrixFq(M.field, M.nrows, M.ncols, tuple(rows)), pivots, len(pivots)


def row_basis(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> tuple[Row, ...]:
    """Canonical (RREF, full row rank) basis of the row space."""
    nonzero, _ = _rref_rows(F, rows, ncols)
    return tuple(tuple(r) for r in nonzero)


def rank(M: MatrixFq) -> int:
    return len(_rref_rows(M.field, M.rows, M.ncols)[1])


def _null_basis(F: FieldSpec, rows: Sequence[Sequence[int]], ncols: int) -> list[Row]:
    """RREF basis of {x : M x^T = 0}, i.e. of the right null space of ``rows``."""
    red, pivots = _rref_rows(F, rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(red[i][f])
        basis.append(tuple(x))
    return list(row_basis(F, basis, ncols)) if basis else []


def kernel_fq(M: MatrixFq) -> MatrixFq:
    """RREF basis of the left kernel {v : v M = 0}."""
    basis = _null_basis(M.field, M.transpose().rows, M.nrows)
    return MatrixFq(M.field, len(basis), M.nrows, tuple(basis))


def solve_right(M: MatrixFq, b: Sequence[int]) -> Row | None:
    """Some x with x M = b, or None when b is outside the row space of M."""
    if len(b) != M.ncols:
        raise ValueError(f"target has length {len(b)}, matrix has {M.ncols} columns")
    F = M.field
    # Reduce the augmented system M^T x^T = b^T.
    aug = [list(M.rows[i][j] for i in range(M.nrows)) + [b[j]] for j in range(M.ncols)]
    red, pivots = _rref_rows(F, aug, M.nrows + 1)
    if pivots and pivots[-1] == M.nrows:
        return None
    x = [0] * M.nrows
    for i, pc in enumerate(pivots):
        x[pc] = red[i][M.nrows]
    return tuple(x)


def inverse(M: MatrixFq) -> MatrixFq:
    if M.nrows != M.ncols:
        raise ValueError("only square matrices are invertible")
    n = M.nrows
    aug = [list(M.rows[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    red, pivots = _rref_rows(M.field, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return MatrixFq(M.field, n, n, tuple(tuple(r[n:]) for r in red))


# -- integer matrices ----------------------------------------------------


@dataclass(frozen=True)
class MatrixInt:
    nrows: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "MatrixInt":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged integer matrix")
        return cls(len(rows), ncols, rows)

    def left_apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """The row vector x M."""
        out = [0] * self.ncols
        for coef, row in zip(x, self.rows):
            if coef:
                for j, v in enumerate(row):
                    if v:
                        out[j] += coef * v
        return tuple(out)


def _primitive(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def integer_rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(_integer_rref(rows, ncols)[1])


def _integer_rref(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[dict[int, int]], list[int]]:
    """Fraction-free reduction to a scaled RREF with sparse rows.

    Pivot rule: leftmost column, then the smallest row index holding a
    nonzero entry there.  Rows are kept primitive after every update so the
    entries stay small.
    """
    work = [{j: v for j, v in enumerate(r) if v} for r in rows]
    # Column -> set of rows still unreduced with a nonzero entry in it.
    by_col: dict[int, set[int]] = {}
    for i, r in enumerate(work):
        for j in r:
            by_col.setdefault(j, set()).add(i)
    done: list[int] = []  # row indices that became pivot rows
    pivots: list[int] = []
    used: set[int] = set()
    for col in range(ncols):
        holders = by_col.get(col)
        if not holders:
            continue
        cand = [i for i in holders if i not in used]
        if not cand:
            continue
        pr = min(cand)
        used.add(pr)
        prow = work[pr]
        a = prow[col]
        for i in sorted(holders):
            if i == pr:
                continue
            row = work[i]
            b = row[col]
            g = gcd(a, b)
            sa, sb = a // g, b // g
            for j in row:
                row[j] *= sa
            for j, v in prow.items():
                nv = row.get(j, 0) - sb * v
                if nv:
                    if j not in row:
                        by_col.setdefault(j, set()).add(i)
                    row[j] = nv
                elif j in row:
                    del row[j]
                    by_col[j].discard(i)
            gg = 0
            for v in row.values():
                gg = gcd(gg, v)
                if gg == 1:
                    break
            if gg > 1:
                for j in row:
                    row[j] //= gg
        by_col[col] = {pr}
        done.append(pr)
        pivots.append(col)
    return [work[i] for i in done], pivots


def integer_kernel(M: MatrixInt) -> MatrixInt:
    """Canonical basis of the integer left kernel {x in Z^r : x M = 0}.

    One basis row per free column of the reduced echelon form of M^T: the row
    has 1 (before scaling) at its free column and 0 at the other free columns.
    Rows are scaled to primitive integer vectors with a positive entry at
    their free column, ordered by free column.
    """
    r, c = M.nrows, M.ncols
    mt = [[M.rows[i][j] for i in range(r)] for j in range(c)]
    red, pivots = _integer_rref(mt, r)
    pivot_set = set(pivots)
    basis = []
    for f in range(r):
        if f in pivot_set:
            continue
        # x_f = L, x_pc = -L * red[i][f] / red[i][pc] with L the lcm of pivots touching f.
        L = 1
        for row, pc in zip(red, pivots):
            if f in row:
                d = abs(row[pc])
                L = L * d // gcd(L, d)
        x = [0] * r
        x[f] = L
        for row, pc in zip(red, pivots):
            if f in row:
                x[pc] = -L * row[f] // row[pc]
        basis.append(tuple(_primitive(x)))
    return MatrixInt(len(basis), r, tuple(basis))
