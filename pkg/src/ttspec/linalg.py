"""Dense exact matrices over a field: rank, kernel, solve, Kronecker product.

Row reduction uses first-nonzero pivoting.  All results are exact; there is
no tolerance knob anywhere in this module.
"""

from __future__ import annotations


class Matrix:
    """Row-major dense matrix over one of the fields in :mod:`ttspec.fields`."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        m = cls.zeros(field, n, n)
        for i in range(n):
            m[i, i] = field.one
        return m

    @classmethod
    def from_rows(cls, field, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        return cls(field, nrows, ncols, [x for r in rows for x in r])

    @classmethod
    def from_int_rows(cls, field, rows) -> "Matrix":
        return cls.from_rows(field, [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def column(cls, field, vec) -> "Matrix":
        vec = list(vec)
        return cls(field, len(vec), 1, vec)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i * self.cols + j] = v

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, list(self.entries))

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(x) for x in self.entries)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(
            f, self.rows, self.cols, [f.add(a, b) for a, b in zip(self.entries, other.entries)]
        )

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        f = self.field
        return Matrix(
            f, self.rows, self.cols, [f.sub(a, b) for a, b in zip(self.entries, other.entries)]
        )

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.neg(a) for a in self.entries])

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.entries])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        f = self.field
        out = Matrix.zeros(f, self.rows, other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self[i, k]
                if f.is_zero(a):
                    continue
                for j in range(other.cols):
                    out[i, j] = f.add(out[i, j], f.mul(a, other[k, j]))
        return out

    def apply(self, vec):
        """Matrix times column vector (a list)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = [f.zero] * self.rows
        for i in range(self.rows):
            acc = f.zero
            for j in range(self.cols):
                acc = f.add(acc, f.mul(self[i, j], vec[j]))
            out[i] = acc
        return out

    def transpose(self) -> "Matrix":
        out = Matrix.zeros(self.field, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j, i] = self[i, j]
        return out

    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination ---------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        f = self.field
        m = self.copy()
        pivots = []
        r = 0
        for c in range(m.cols):
            pivot_row = None
            for i in range(r, m.rows):
                if not f.is_zero(m[i, c]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != r:
                for j in range(m.cols):
                    m[r, j], m[pivot_row, j] = m[pivot_row, j], m[r, j]
            inv = f.inv(m[r, c])
            for j in range(m.cols):
                m[r, j] = f.mul(inv, m[r, j])
            for i in range(m.rows):
                if i == r:
                    continue
                factor = m[i, c]
                if f.is_zero(factor):
                    continue
                for j in range(m.cols):
                    m[i, j] = f.sub(m[i, j], f.mul(factor, m[r, j]))
            pivots.append(c)
            r += 1
            if r == m.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis of the right kernel, as a list of column vectors."""
        f = self.field
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [f.zero] * self.cols
            v[fc] = f.one
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(red[r, fc])
            basis.append(v)
        return basis

    def solve(self, b):
        """One solution of self @ x = b, or None when inconsistent."""
        if len(b) != self.rows:
            raise ValueError("rhs length mismatch")
        f = self.field
        aug = Matrix.zeros(f, self.rows, self.cols + 1)
        for i in range(self.rows):
            for j in range(self.cols):
                aug[i, j] = self[i, j]
            aug[i, self.cols] = b[i]
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [f.zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red[r, self.cols]
        return x

    def solve_matrix(self, B: "Matrix"):
        """Columnwise solve: X with self @ X = B, or None."""
        cols = []
        for j in range(B.cols):
            x = self.solve(B.col(j))
            if x is None:
                return None
            cols.append(x)
        return Matrix.from_columns(self.field, cols, self.cols)

    @classmethod
    def from_columns(cls, field, cols, nrows: int | None = None) -> "Matrix":
        if nrows is None:
            if not cols:
                raise ValueError("cannot infer row count of an empty column list")
            nrows = len(cols[0])
        m = cls.zeros(field, nrows, len(cols))
        for j, v in enumerate(cols):
            if len(v) != nrows:
                raise ValueError("ragged columns")
            for i in range(nrows):
                m[i, j] = v[i]
        return m

    def inverse(self):
        if self.rows != self.cols:
            return None
        f = self.field
        aug = Matrix.zeros(f, self.rows, 2 * self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                aug[i, j] = self[i, j]
            aug[i, self.cols + i] = f.one
        red, pivots = aug.rref()
        if pivots != list(range(self.rows)):
            return None
        out = Matrix.zeros(f, self.rows, self.rows)
        for i in range(self.rows):
            for j in range(self.rows):
                out[i, j] = red[i, self.cols + j]
        return out

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    # -- structure ----------------------------------------------------------

    def kron(self, other: "Matrix") -> "Matrix":
        f = self.field
        out = Matrix.zeros(f, self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if f.is_zero(a):
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        out[i * other.rows + k, j * other.cols + l] = f.mul(a, other[k, l])
        return out

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        out = Matrix.zeros(self.field, self.rows, self.cols + other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self[i, j]
            for j in range(other.cols):
                out[i, self.cols + j] = other[i, j]
        return out

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(
            self.field, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    @classmethod
    def block(cls, field, grid, row_sizes, col_sizes) -> "Matrix":
        """Assemble a block matrix; None blocks are zero."""
        rows = sum(row_sizes)
        cols = sum(col_sizes)
        out = cls.zeros(field, rows, cols)
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                blk = grid[bi][bj]
                if blk is not None:
                    if blk.rows != rs or blk.cols != cs:
                        raise ValueError("block shape mismatch")
                    for i in range(rs):
                        for j in range(cs):
                            out[r0 + i, c0 + j] = blk[i, j]
                c0 += cs
            r0 += rs
        return out

    def map_entries(self, target_field, fn) -> "Matrix":
        return Matrix(target_field, self.rows, self.cols, [fn(x) for x in self.entries])

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"


# -- module-level operation names ------------------------------------------


def rank_kernel(m: Matrix):
    """Rank and a kernel basis; rank + len(basis) == cols."""
    basis = m.kernel_basis()
    return m.cols - len(basis), basis


def solve_linear(a: Matrix, b):
    return a.solve(b)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValueError("kronecker requires a common field")
    return a.kron(b)


def random_matrix(field, rows, cols, rng) -> Matrix:
    return Matrix(field, rows, cols, [field.rand(rng) for _ in range(rows * cols)])
