"""Exact integer matrices: Smith normal form, determinants, kernels.

Everything runs on Python's arbitrary-precision integers, so no operation
here can overflow or round.  All values are immutable; functions return
fresh objects and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeError


def _check_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if not isinstance(x, int):
        raise ShapeError(f"matrix entries must be integers, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ShapeError("matrix needs at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ShapeError("all rows must have the same length")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(_check_int(x) for x in row) for row in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        if n < 1:
            raise ShapeError("identity needs n >= 1")
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(
            tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in row) for row in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = tuple(zip(*other.entries))
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries)
        )

    def mul_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} does not fit {self.rows}x{self.cols}")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def trace(self) -> int:
        if not self.is_square:
            raise ShapeError("trace needs a square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form D = U @ M @ V of an integer matrix M.

    U and V are unimodular; the diagonal of D is nonnegative and each
    diagonal entry divides the next.  U_inv and V_inv are present when the
    form was computed with ``with_inverses=True``.
    """

    matrix: IntMatrix
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.D.diagonal()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _eye(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(m: IntMatrix, with_inverses: bool = False) -> SnfResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Pivots are chosen with minimal absolute value to keep intermediate
    entries small.  The diagonal is normalized nonnegative and satisfies
    the divisibility chain d1 | d2 | ... (zeros, if any, come last).
    """
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = _eye(r)
    v = _eye(c)
    ui = _eye(r) if with_inverses else None
    vi = _eye(c) if with_inverses else None

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        if ui is not None:
            for row in ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        if vi is not None:
            vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        if q == 0:
            return
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
        if ui is not None:
            for row in ui:
                row[src] -= q * row[dst]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src
        if q == 0:
            return
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        if vi is not None:
            vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        if ui is not None:
            for row in ui:
                row[i] = -row[i]

    def find_pivot(t: int) -> tuple[int, int] | None:
        best = None
        best_abs = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x != 0:
                    ax = -x if x < 0 else x
                    if best_abs is None or ax < best_abs:
                        best = (i, j)
                        best_abs = ax
                        if ax == 1:
                            return best
        return best

    limit = min(r, c)
    t = 0
    while t < limit:
        piv = find_pivot(t)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            for i in range(t + 1, r):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(i, t)
            col_dirtied = False
            for j in range(t + 1, c):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(j, t)
                        col_dirtied = True
            if col_dirtied:
                continue
            pivot = a[t][t]
            offender = None
            for i in range(t + 1, r):
                row = a[i]
                for j in range(t + 1, c):
                    if row[j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into the pivot row so the next pass
            # shrinks the pivot to a common divisor
            add_row(t, offender, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    return SnfResult(
        matrix=m,
        D=IntMatrix.from_rows(a),
        U=IntMatrix.from_rows(u),
        V=IntMatrix.from_rows(v),
        U_inv=IntMatrix.from_rows(ui) if ui is not None else None,
        V_inv=IntMatrix.from_rows(vi) if vi is not None else None,
    )


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ShapeError("determinant needs a square matrix")
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row = a[i]
            head = row[k]
            base = a[k]
            for j in range(k + 1, n):
                row[j] = (row[j] * pivot - head * base[j]) // prev
            row[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def kernel_basis(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel {v : M v = 0}; empty list if trivial.

    The vectors come from the columns of the Smith-form column transform
    and therefore generate the kernel as a lattice.
    """
    snf = smith_normal_form(m)
    rank = snf.rank
    if rank == m.cols:
        return []
    cols = list(zip(*snf.V.entries))
    return [tuple(cols[j]) for j in range(rank, m.cols)]


def solve_linear(m: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """Some integer solution x of M x = b, or None when none exists."""
    if len(b) != m.rows:
        raise ShapeError(f"right-hand side of length {len(b)} does not fit {m.rows} rows")
    snf = smith_normal_form(m)
    y = snf.U.mul_vector(tuple(b))
    diag = snf.diagonal
    w = [0] * m.cols
    for i in range(m.rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
        else:
            if y[i] % d != 0:
                return None
            if i < m.cols:
                w[i] = y[i] // d
    return snf.V.mul_vector(w)
