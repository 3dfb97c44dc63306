"""Finite commutative rings, their primes, residue fields, and free complexes.

Supported ring kinds are closed-form localizable: Z/n via CRT, finite fields,
F_p[x]/(f) via polynomial factorization, and finite products.  Cohomology of
free complexes over Z/n is computed through integer lifts and Smith normal
form; over polynomial quotients through restriction of scalars to the prime
field.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import fields as field_ops
from .fields import GaloisField, PrimeField, is_prime
from .intlinalg import IntMatrix, zmod_homology
from .linalg import Matrix

FACTOR_LIMIT = 10**12


def factor_integer(n: int):
    """Prime factorization by trial division; rejects inputs beyond desk scale."""
    if n < 2:
        raise ValueError("need n >= 2")
    if n > FACTOR_LIMIT:
        raise ValueError(f"refusing to factor {n}: exceeds trial-division limit {FACTOR_LIMIT}")
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


# ---------------------------------------------------------------------------
# ring kinds


class FiniteRing:
    kind = "abstract"

    def elements(self):
        raise NotImplementedError

    def size(self) -> int:
        return len(self.elements())

    def is_zero(self, r) -> bool:
        return r == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_unit(self, r) -> bool:
        one = self.one
        return any(self.mul(r, s) == one for s in self.elements())

    def label(self, r) -> str:
        return str(r)

    def from_int(self, n: int):
        out = self.zero
        one = self.one
        step = one if n >= 0 else self.neg(one)
        for _ in range(abs(n)):
            out = self.add(out, step)
        return out


class ZmodRing(FiniteRing):
    kind = "zmod"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be >= 2")
        self.n = n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def elements(self):
        return list(range(self.n))

    def is_unit(self, r) -> bool:
        return gcd(r, self.n) == 1

    def from_int(self, k: int):
        return k % self.n

    def __eq__(self, other):
        return isinstance(other, ZmodRing) and other.n == self.n

    def __hash__(self):
        return hash(("zmod", self.n))

    def __repr__(self):
        return f"Z/{self.n}"


class FieldRing(FiniteRing):
    """A finite field viewed as a ring (prime field or Galois extension)."""

    kind = "field"

    def __init__(self, fld):
        if not hasattr(fld, "elements"):
            raise ValueError("FieldRing needs a finite field")
        self.fld = fld

    @property
    def zero(self):
        return self.fld.zero

    @property
    def one(self):
        return self.fld.one

    def add(self, a, b):
        return self.fld.add(a, b)

    def neg(self, a):
        return self.fld.neg(a)

    def mul(self, a, b):
        return self.fld.mul(a, b)

    def elements(self):
        return self.fld.elements()

    def is_unit(self, r) -> bool:
        return not self.fld.is_zero(r)

    def from_int(self, k: int):
        return self.fld.from_int(k)

    def __eq__(self, other):
        return isinstance(other, FieldRing) and other.fld == self.fld

    def __hash__(self):
        return hash(("field-ring", self.fld))

    def __repr__(self):
        return f"FieldRing({self.fld!r})"


def poly_str(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("x" if c == 1 else f"{c}x")
        else:
            terms.append(f"x^{i}" if c == 1 else f"{c}x^{i}")
    return "+".join(terms) if terms else "0"


class PolyQuotientRing(FiniteRing):
    """F_p[x]/(f) with f monic of degree >= 1; elements are coefficient tuples."""

    kind = "polyquot"

    def __init__(self, base: PrimeField, modulus):
        if not isinstance(base, PrimeField):
            raise ValueError("polynomial quotients are supported over prime fields")
        modulus = field_ops.poly_trim(tuple(int(c) % base.p for c in modulus))
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1

    def _wrap(self, coeffs):
        c = list(field_ops.poly_mod(self.base, coeffs, self.modulus))
        return tuple(c + [0] * (self.degree - len(c)))

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return self._wrap((1,))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return self._wrap(
            field_ops.poly_mul(self.base, field_ops.poly_trim(a), field_ops.poly_trim(b))
        )

    def elements(self):
        out = []

        def rec(i, acc):
            if i == self.degree:
                out.append(tuple(acc))
                return
            for c in range(self.base.p):
                rec(i + 1, acc + [c])

        rec(0, [])
        return out

    def from_int(self, k: int):
        return self._wrap((k % self.base.p,))

    def label(self, r) -> str:
        return poly_str(r)

    def multiplication_matrix(self, r) -> Matrix:
        """The base-field matrix of multiplication by r on the monomial basis."""
        cols = []
        for j in range(self.degree):
            xj = tuple(1 if i == j else 0 for i in range(self.degree))
            prod = self.mul(r, xj)
            cols.append(list(prod))
        return Matrix.from_columns(self.base, cols, self.degree)

    def __eq__(self, other):
        return (
            isinstance(other, PolyQuotientRing)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("polyquot", self.base.p, self.modulus))

    def __repr__(self):
        return f"F{self.base.p}[x]/({poly_str(self.modulus)})"


class ProductRing(FiniteRing):
    kind = "product"

    def __init__(self, factors):
        self.factors = list(factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def elements(self):
        import itertools

        pools = [f.elements() for f in self.factors]
        return [tuple(combo) for combo in itertools.product(*pools)]

    def is_unit(self, r) -> bool:
        return all(f.is_unit(x) for f, x in zip(self.factors, r))

    def from_int(self, k: int):
        return tuple(f.from_int(k) for f in self.factors)

    def label(self, r) -> str:
        return "(" + ",".join(f.label(x) for f, x in zip(self.factors, r)) + ")"

    def __eq__(self, other):
        return isinstance(other, ProductRing) and other.factors == self.factors

    def __hash__(self):
        return hash(("product", tuple(hash(f) for f in self.factors)))

    def __repr__(self):
        return " x ".join(repr(f) for f in self.factors)


def parse_ring(data) -> FiniteRing:
    """Ring literals: {"kind":"zmod","n":12}, {"kind":"polyquot","p":2,"f":[0,0,1]}, ..."""
    kind = data.get("kind")
    if kind == "zmod":
        return ZmodRing(int(data["n"]))
    if kind == "field":
        if "p" in data and "e" in data and int(data["e"]) > 1:
            return FieldRing(GaloisField(int(data["p"]), int(data["e"])))
        return FieldRing(PrimeField(int(data["p"])))
    if kind == "polyquot":
        return PolyQuotientRing(PrimeField(int(data["p"])), data["f"])
    if kind == "product":
        return ProductRing([parse_ring(f) for f in data["factors"]])
    raise ValueError(f"unrecognized ring literal {data!r}")


# ---------------------------------------------------------------------------
# primes, residue fields, localization


@dataclass
class PrimePoint:
    ring: FiniteRing
    label: str
    residue_field: object
    local_ring: FiniteRing
    _reduce: object  # ring element -> residue field element
    _to_local: object  # ring element -> localized ring element

    def reduce(self, r):
        return self._reduce(r)

    def to_local(self, r):
        return self._to_local(r)

    def __repr__(self):
        return f"PrimePoint({self.label} of {self.ring!r})"


def _poly_pow(base_field, g, e):
    out = (1,)
    for _ in range(e):
        out = field_ops.poly_mul(base_field, out, g)
    return out


def factor_monic_poly(base: PrimeField, f):
    """Factor a monic polynomial into monic irreducible powers by trial division."""
    f = field_ops.poly_trim(f)
    factors = []
    while len(f) > 1:
        divisor = None
        for d in range(1, (len(f) - 1) // 2 + 1):
            for g in field_ops.all_monic_polys(base, d):
                if not field_ops.poly_mod(base, f, g):
                    divisor = g
                    break
            if divisor:
                break
        if divisor is None:
            divisor = field_ops.poly_monic(base, f)
        e = 0
        while len(f) > 1 and not field_ops.poly_mod(base, f, divisor):
            f = field_ops.poly_divmod(base, f, divisor)[0]
            e += 1
        factors.append((divisor, e))
    factors.sort(key=lambda ge: (len(ge[0]), ge[0]))
    return factors


def primes(ring: FiniteRing):
    """Complete list of prime (= maximal) ideals; the topology is discrete."""
    if isinstance(ring, ZmodRing):
        out = []
        for p, e in factor_integer(ring.n):
            local = ZmodRing(p**e)
            out.append(
                PrimePoint(
                    ring=ring,
                    label=f"({p})",
                    residue_field=PrimeField(p),
                    local_ring=local,
                    _reduce=(lambda r, p=p: r % p),
                    _to_local=(lambda r, q=p**e: r % q),
                )
            )
        return sorted(out, key=lambda pt: pt.label)
    if isinstance(ring, FieldRing):
        return [
            PrimePoint(
                ring=ring,
                label="(0)",
                residue_field=ring.fld,
                local_ring=ring,
                _reduce=lambda r: r,
                _to_local=lambda r: r,
            )
        ]
    if isinstance(ring, PolyQuotientRing):
        out = []
        base = ring.base
        for g, e in factor_monic_poly(base, ring.modulus):
            local_modulus = _poly_pow(base, g, e)
            local = PolyQuotientRing(base, local_modulus)
            if len(g) == 2:
                # linear factor x + c: evaluate at the root -c
                root = base.neg(g[0])
                residue = base

                def reduce_lin(r, root=root, base=base):
                    acc = base.zero
                    power = base.one
                    for coef in r:
                        acc = base.add(acc, base.mul(coef, power))
                        power = base.mul(power, root)
                    return acc

                reducer = reduce_lin
            else:
                residue = GaloisField(base.p, len(g) - 1, modulus=g)

                def reduce_ext(r, residue=residue, base=base):
                    rem = field_ops.poly_mod(base, field_ops.poly_trim(r), residue.modulus)
                    return tuple(list(rem) + [0] * (residue.e - len(rem)))

                reducer = reduce_ext
            out.append(
                PrimePoint(
                    ring=ring,
                    label=f"({poly_str(g)})",
                    residue_field=residue,
                    local_ring=local,
                    _reduce=reducer,
                    _to_local=(lambda r, local=local: local._wrap(field_ops.poly_trim(r))),
                )
            )
        return sorted(out, key=lambda pt: pt.label)
    if isinstance(ring, ProductRing):
        out = []
        for i, factor in enumerate(ring.factors):
            for q in primes(factor):
                out.append(
                    PrimePoint(
                        ring=ring,
                        label=f"{i}:{q.label}",
                        residue_field=q.residue_field,
                        local_ring=q.local_ring,
                        _reduce=(lambda r, i=i, q=q: q.reduce(r[i])),
                        _to_local=(lambda r, i=i, q=q: q.to_local(r[i])),
                    )
                )
        return sorted(out, key=lambda pt: pt.label)
    raise ValueError(f"unsupported ring {ring!r}")


def localize(ring: FiniteRing, point: PrimePoint):
    """The localization at a prime, with its canonical map."""
    return point.local_ring, point.to_local


@dataclass
class SectionData:
    ring: FiniteRing
    restrict: object  # global element -> section tuple
    is_global_iso: bool | None  # CRT reconstruction verdict (full open set only)


def structure_sheaf(ring: FiniteRing, opens) -> SectionData:
    """Sections over a set of primes: the product of the localizations."""
    opens = sorted(opens, key=lambda pt: pt.label)
    section_ring = ProductRing([pt.local_ring for pt in opens])

    def restrict(r):
        return tuple(pt.to_local(r) for pt in opens)

    verdict = None
    if {pt.label for pt in opens} == {pt.label for pt in primes(ring)}:
        images = set()
        ok = True
        for r in ring.elements():
            img = restrict(r)
            if img in images:
                ok = False
                break
            images.add(img)
        if ok and len(images) != section_ring.size():
            ok = False
        # ring homomorphism spot checks are exact and exhaustive at this scale
        if ok:
            for a in ring.elements():
                for b in ring.elements():
                    if restrict(ring.add(a, b)) != section_ring.add(restrict(a), restrict(b)):
                        ok = False
                        break
                    if restrict(ring.mul(a, b)) != section_ring.mul(restrict(a), restrict(b)):
                        ok = False
                        break
                if not ok:
                    break
        verdict = ok
    return SectionData(ring=section_ring, restrict=restrict, is_global_iso=verdict)


@dataclass
class LocalRingReport:
    is_local: bool
    nonunits: list
    witness: tuple | None  # offending pair when not local

    @property
    def maximal_ideal(self):
        return self.nonunits if self.is_local else None


def local_ring_check(ring: FiniteRing) -> LocalRingReport:
    """Exhaustively decide whether the non-units form an ideal."""
    elements = ring.elements()
    nonunits = [r for r in elements if not ring.is_unit(r)]
    nonunit_set = set(nonunits)
    for a in nonunits:
        for b in nonunits:
            if ring.add(a, b) not in nonunit_set:
                return LocalRingReport(False, nonunits, (a, b))
    for a in nonunits:
        for r in elements:
            if ring.mul(r, a) not in nonunit_set:
                return LocalRingReport(False, nonunits, (r, a))
    return LocalRingReport(True, sorted(nonunits, key=ring.label), None)


# ---------------------------------------------------------------------------
# free modules and complexes


class RingMatrix:
    """Dense matrix over a finite commutative ring (no division anywhere)."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count mismatch")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @property
    def source(self) -> int:
        return self.cols

    @property
    def target(self) -> int:
        return self.rows

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    @classmethod
    def identity(cls, ring, n):
        m = cls.zeros(ring, n, n)
        for i in range(n):
            m[i, i] = ring.one
        return m

    @classmethod
    def from_int_rows(cls, ring, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(ring, nrows, ncols, [ring.from_int(x) for r in rows for x in r])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.entries[i * self.cols + j] = v

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and other.rows == self.rows
            and other.cols == self.cols
            and other.entries == self.entries
        )

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for x in self.entries)

    def add(self, other):
        return RingMatrix(
            self.ring,
            self.rows,
            self.cols,
            [self.ring.add(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def neg(self):
        return RingMatrix(self.ring, self.rows, self.cols, [self.ring.neg(a) for a in self.entries])

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = RingMatrix.zeros(self.ring, self.rows, other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self[i, k]
                if self.ring.is_zero(a):
                    continue
                for j in range(other.cols):
                    out[i, j] = self.ring.add(out[i, j], self.ring.mul(a, other[k, j]))
        return out

    def scale(self, c):
        return RingMatrix(
            self.ring, self.rows, self.cols, [self.ring.mul(c, a) for a in self.entries]
        )

    def kron(self, other):
        out = RingMatrix.zeros(self.ring, self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if self.ring.is_zero(a):
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        out[i * other.rows + k, j * other.cols + l] = self.ring.mul(
                            a, other[k, l]
                        )
        return out

    def map_entries(self, fn):
        return [fn(x) for x in self.entries]

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols} over {self.ring!r})"


class FreeCat:
    """Category hooks for bounded complexes of finite free modules."""

    kind = "free-ring-module"
    hereditary = False

    def __init__(self, ring: FiniteRing):
        self.ring = ring

    def zero_obj(self):
        return 0

    def unit_obj(self):
        return 1

    def is_zero_obj(self, o) -> bool:
        return o == 0

    def obj_eq(self, a, b) -> bool:
        return a == b

    def obj_total_dim(self, o) -> int:
        return o

    def identity(self, o):
        return RingMatrix.identity(self.ring, o)

    def zero_mor(self, src, tgt):
        return RingMatrix.zeros(self.ring, tgt, src)

    def compose(self, f, g):
        return f.mul(g)

    def add(self, f, g):
        return f.add(g)

    def neg(self, f):
        return f.neg()

    def mor_is_zero(self, f) -> bool:
        return f.is_zero()

    def mor_eq(self, f, g) -> bool:
        return f == g

    def sum_objs(self, objs):
        return sum(objs)

    def block_mor(self, srcs, tgts, blocks):
        out = RingMatrix.zeros(self.ring, sum(tgts), sum(srcs))
        row_offsets = [sum(tgts[:i]) for i in range(len(tgts))]
        col_offsets = [sum(srcs[:j]) for j in range(len(srcs))]
        for (ti, sj), m in blocks.items():
            if m.rows != tgts[ti] or m.cols != srcs[sj]:
                raise ValueError("block shape mismatch")
            for i in range(m.rows):
                for j in range(m.cols):
                    out[row_offsets[ti] + i, col_offsets[sj] + j] = m[i, j]
        return out

    def tensor_obj(self, a, b):
        return a * b

    def tensor_mor(self, f, g):
        return f.kron(g)

    def scale_mor(self, f, c):
        return f.scale(c)


# ---------------------------------------------------------------------------
# fibers, supports, homology over the ring


@dataclass
class FieldComplexData:
    field: object
    dims: dict  # degree -> dimension
    diffs: dict  # degree -> Matrix

    def cohomology_dims(self):
        out = {}
        degs = set(self.dims)
        for i in sorted(degs):
            dim_here = self.dims.get(i, 0)
            d_out = self.diffs.get(i)
            d_in = self.diffs.get(i - 1)
            h = dim_here - (d_out.rank() if d_out else 0) - (d_in.rank() if d_in else 0)
            if h:
                out[i] = h
        return out


def fiber(complex_, point: PrimePoint) -> FieldComplexData:
    """Reduce a free complex entrywise to the residue field at a prime."""
    fld = point.residue_field
    dims = {i: complex_.obj(i) for i in complex_.degrees()}
    diffs = {}
    for i, d in complex_.diffs.items():
        diffs[i] = Matrix(fld, d.rows, d.cols, d.map_entries(point.reduce))
    return FieldComplexData(field=fld, dims=dims, diffs=diffs)


def support(complex_, points=None):
    """Primes where the fiber has nonzero cohomology."""
    if points is None:
        points = primes(complex_.cat.ring)
    return [pt for pt in points if fiber(complex_, pt).cohomology_dims()]


def zmod_complex_homology(complex_) -> dict:
    """Invariant factors of H^i for a complex over Z/n, degree by degree."""
    ring = complex_.cat.ring
    if not isinstance(ring, ZmodRing):
        raise TypeError("integer-lift homology needs a Z/n base")
    n = ring.n
    out = {}
    for i in complex_.degrees():
        rank = complex_.obj(i)
        d_out = complex_.diffs.get(i)
        d_in = complex_.diffs.get(i - 1)
        lift_out = (
            IntMatrix(d_out.rows, d_out.cols, d_out.entries) if d_out is not None else None
        )
        lift_in = IntMatrix(d_in.rows, d_in.cols, d_in.entries) if d_in is not None else None
        invariants = zmod_homology(lift_in, lift_out, rank, n)
        if invariants:
            out[i] = invariants
    return out


def _restrict_polyquot_matrix(m: RingMatrix) -> Matrix:
    ring = m.ring
    base = ring.base
    d = ring.degree
    out = Matrix.zeros(base, m.rows * d, m.cols * d)
    for i in range(m.rows):
        for j in range(m.cols):
            blk = ring.multiplication_matrix(m[i, j])
            for r in range(d):
                for c in range(d):
                    out[i * d + r, j * d + c] = blk[r, c]
    return out


def is_acyclic_over_ring(complex_) -> bool:
    """Exactness over the base ring itself (not just fiberwise)."""
    ring = complex_.cat.ring
    if isinstance(ring, ZmodRing):
        return not zmod_complex_homology(complex_)
    if isinstance(ring, FieldRing):
        data = FieldComplexData(
            field=ring.fld,
            dims={i: complex_.obj(i) for i in complex_.degrees()},
            diffs={
                i: Matrix(ring.fld, d.rows, d.cols, list(d.entries))
                for i, d in complex_.diffs.items()
            },
        )
        return not data.cohomology_dims()
    if isinstance(ring, PolyQuotientRing):
        d = ring.degree
        data = FieldComplexData(
            field=ring.base,
            dims={i: complex_.obj(i) * d for i in complex_.degrees()},
            diffs={i: _restrict_polyquot_matrix(m) for i, m in complex_.diffs.items()},
        )
        return not data.cohomology_dims()
    if isinstance(ring, ProductRing):
        for i, factor in enumerate(ring.factors):
            from .complexes import BoundedComplex

            cat = FreeCat(factor)
            objects = {d: complex_.obj(d) for d in complex_.degrees()}
            diffs = {}
            for d, m in complex_.diffs.items():
                diffs[d] = RingMatrix(
                    factor, m.rows, m.cols, [entry[i] for entry in m.entries]
                )
            if not is_acyclic_over_ring(BoundedComplex(cat, objects, diffs)):
                return False
        return True
    raise ValueError(f"unsupported ring {ring!r}")


def two_term_complex(cat: FreeCat, element, degree: int = 0):
    """The complex [R --(element)--> R] starting at the chosen degree."""
    from .complexes import BoundedComplex

    d = RingMatrix(cat.ring, 1, 1, [element])
    return BoundedComplex(cat, {degree: 1, degree + 1: 1}, {degree: d})
