"""Arbitrary-precision integer matrices and Smith normal form.

SNF is computed over Z with unimodular transforms on both sides; quotients of
Z/n-module maps are then read off from invariant factors.  This avoids any
pivoting over rings with zero divisors.
"""

from __future__ import annotations

from math import gcd


class IntMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [int(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError("entry count mismatch")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, [int(x) for r in rows for x in r])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i * self.cols + j] = int(v)

    def copy(self):
        return IntMatrix(self.rows, self.cols, list(self.entries))

    def to_rows(self):
        return [self.entries[i * self.cols : (i + 1) * self.cols] for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = IntMatrix.zeros(self.rows, other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self[i, k]
                if a == 0:
                    continue
                for j in range(other.cols):
                    out[i, j] += a * other[k, j]
        return out

    def transpose(self) -> "IntMatrix":
        out = IntMatrix.zeros(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out[j, i] = self[i, j]
        return out

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        out = IntMatrix.zeros(self.rows, self.cols + other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self[i, j]
            for j in range(other.cols):
                out[i, self.cols + j] = other[i, j]
        return out

    def col(self, j):
        return [self[i, j] for i in range(self.rows)]

    def is_zero(self):
        return all(x == 0 for x in self.entries)

    def scale_by(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [x * c for x in self.entries])

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.to_rows()]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def smith_normal_form(a: IntMatrix):
    """U, D, V with U*a*V = D diagonal, d_i | d_{i+1}, det(U), det(V) = +-1."""
    d = a.copy()
    u = IntMatrix.identity(a.rows)
    v = IntMatrix.identity(a.cols)

    def row_swap(i, j):
        for m in (d, u):
            for c in range(m.cols):
                m[i, c], m[j, c] = m[j, c], m[i, c]

    def col_swap(i, j):
        for m in (d, v):
            for r in range(m.rows):
                m[r, i], m[r, j] = m[r, j], m[r, i]

    def row_addmul(dst, src, q):
        for c in range(d.cols):
            d[dst, c] += q * d[src, c]
        for c in range(u.cols):
            u[dst, c] += q * u[src, c]

    def col_addmul(dst, src, q):
        for r in range(d.rows):
            d[r, dst] += q * d[r, src]
        for r in range(v.rows):
            v[r, dst] += q * v[r, src]

    def row_negate(i):
        for c in range(d.cols):
            d[i, c] = -d[i, c]
        for c in range(u.cols):
            u[i, c] = -u[i, c]

    def min_pivot(t):
        best = None
        for i in range(t, d.rows):
            for j in range(t, d.cols):
                x = abs(d[i, j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        return best

    t = 0
    while t < min(d.rows, d.cols):
        found = min_pivot(t)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        dirty = False
        for i in range(t + 1, d.rows):
            if d[i, t]:
                q = d[i, t] // d[t, t]
                row_addmul(i, t, -q)
                if d[i, t]:
                    dirty = True
        for j in range(t + 1, d.cols):
            if d[t, j]:
                q = d[t, j] // d[t, t]
                col_addmul(j, t, -q)
                if d[t, j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the remaining submatrix
        offender = None
        for i in range(t + 1, d.rows):
            for j in range(t + 1, d.cols):
                if d[i, j] % d[t, t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_addmul(t, offender, 1)
            continue
        if d[t, t] < 0:
            row_negate(t)
        t += 1
    return u, d, v


def diagonal_of(d: IntMatrix):
    return [d[i, i] for i in range(min(d.rows, d.cols))]


def solve_integer(b: IntMatrix, g: IntMatrix):
    """Integer X with b @ X = g, or None when no integral solution exists."""
    if b.rows != g.rows:
        raise ValueError("shape mismatch")
    u, d, v = smith_normal_form(b)
    ug = u.mul(g)
    y = IntMatrix.zeros(b.cols, g.cols)
    diag = diagonal_of(d)
    for j in range(g.cols):
        for i in range(b.rows):
            di = diag[i] if i < len(diag) else 0
            rhs = ug[i, j]
            if di == 0:
                if rhs != 0:
                    return None
            else:
                if rhs % di:
                    return None
                if i < b.cols:
                    y[i, j] = rhs // di
    return v.mul(y)


def kernel_mod(m: IntMatrix, n: int) -> IntMatrix:
    """Basis (columns) of the lattice {x in Z^cols : m x = 0 mod n}.

    The lattice always contains n*Z^cols, so the basis matrix is square of
    full rank cols.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    _, d, v = smith_normal_form(m)
    diag = diagonal_of(d)
    out = IntMatrix.zeros(m.cols, m.cols)
    for j in range(m.cols):
        dj = diag[j] if j < len(diag) else 0
        c = n // gcd(dj, n)
        for i in range(m.cols):
            out[i, j] = v[i, j] * c
    return out


def cokernel_invariants(x: IntMatrix):
    """Invariant factors (>1) of Z^rows / column lattice of x; raises on free part."""
    _, d, _ = smith_normal_form(x)
    diag = diagonal_of(d)
    nonzero = [abs(e) for e in diag if e != 0]
    if len(nonzero) < x.rows:
        raise ValueError("cokernel has a free part")
    return [e for e in nonzero if e != 1]


def zmod_homology(d_in: IntMatrix | None, d_out: IntMatrix | None, rank: int, n: int):
    """Invariant factors of ker(d_out)/im(d_in) inside (Z/n)^rank.

    Both maps are given by integer lifts; d_out may be None (zero map out),
    likewise d_in.  Requires d_out @ d_in = 0 mod n.
    """
    if d_out is None:
        d_out = IntMatrix.zeros(0, rank)
    if d_in is None:
        d_in = IntMatrix.zeros(rank, 0)
    kernel_basis = kernel_mod(d_out, n)
    gens = d_in.hstack(IntMatrix.identity(rank).scale_by(n))
    coords = solve_integer(kernel_basis, gens)
    if coords is None:
        raise ValueError("image does not lie in the kernel (d*d != 0 mod n?)")
    return cokernel_invariants(coords)
