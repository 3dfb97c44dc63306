"""Exact scalar arithmetic: prime fields F_p, the rationals, and small Galois extensions.

Every field exposes the same duck interface (zero/one/add/sub/neg/mul/inv,
from_int, eq) so that the matrix code in :mod:`ttspec.linalg` is generic.
Elements are plain hashable Python values: ints for F_p, Fraction for Q,
coefficient tuples for GF(p^e).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p with elements represented as ints in [0, p)."""

    kind = "prime-field"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def elements(self):
        return list(range(self.p))

    def rand(self, rng):
        return rng.randrange(self.p)

    def spec(self) -> dict:
        return {"kind": self.kind, "characteristic": self.characteristic, "order": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"F{self.p}"


class Rationals:
    """The field Q, backed by Fraction (normalized sign and gcd)."""

    kind = "rationals"
    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def rand(self, rng):
        return Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 3]))

    def spec(self) -> dict:
        return {"kind": self.kind, "characteristic": 0}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "Q"


# ---------------------------------------------------------------------------
# polynomial helpers over a prime field (coefficient tuples, ascending degree)


def poly_trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(fp: PrimeField, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(fp.add(x, y))
    return poly_trim(out)


def poly_mul(fp: PrimeField, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = fp.add(out[i + j], fp.mul(x, y))
    return poly_trim(out)


def poly_divmod(fp: PrimeField, a, b):
    """Quotient and remainder of a by b (b nonzero)."""
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(poly_trim(a))
    inv_lead = fp.inv(b[-1])
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        coef = fp.mul(a[-1], inv_lead)
        deg = len(a) - len(b)
        q[deg] = coef
        for i, x in enumerate(b):
            a[deg + i] = fp.sub(a[deg + i], fp.mul(coef, x))
        while a and a[-1] == 0:
            a.pop()
    return poly_trim(q), poly_trim(a)


def poly_mod(fp: PrimeField, a, b):
    return poly_divmod(fp, a, b)[1]


def poly_monic(fp: PrimeField, a):
    a = poly_trim(a)
    if not a:
        return a
    inv = fp.inv(a[-1])
    return tuple(fp.mul(inv, c) for c in a)


def all_monic_polys(fp: PrimeField, degree: int):
    """All monic polynomials of the given degree, lexicographic in low coefficients."""

    def rec(i, acc):
        if i == degree:
            yield tuple(acc) + (1,)
            return
        for c in range(fp.p):
            yield from rec(i + 1, acc + [c])

    yield from rec(0, [])


def poly_is_irreducible(fp: PrimeField, f) -> bool:
    f = poly_trim(f)
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for g in all_monic_polys(fp, d):
            if not poly_mod(fp, f, g):
                return False
    return True


def find_irreducible(fp: PrimeField, degree: int):
    for f in all_monic_polys(fp, degree):
        if poly_is_irreducible(fp, f):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {degree} over F{fp.p}")


class GaloisField:
    """GF(p^e) as F_p[x]/(modulus); elements are coefficient tuples of length e."""

    kind = "galois-field"

    def __init__(self, p: int, e: int, modulus=None):
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.base = PrimeField(p)
        self.p = p
        self.e = e
        self.characteristic = p
        if modulus is None:
            modulus = find_irreducible(self.base, e)
        modulus = poly_trim(modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not poly_is_irreducible(self.base, modulus):
            raise ValueError("modulus must be irreducible")
        self.modulus = modulus

    def _wrap(self, coeffs):
        c = list(poly_mod(self.base, coeffs, self.modulus))
        return tuple(c + [0] * (self.e - len(c)))

    @property
    def zero(self):
        return (0,) * self.e

    @property
    def one(self):
        return self._wrap((1,))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        return self._wrap(poly_mul(self.base, poly_trim(a), poly_trim(b)))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in GF")
        # brute-force inverse; fields here are tiny
        for b in self.elements():
            if self.mul(a, b) == self.one:
                return b
        raise RuntimeError("unit without inverse (broken modulus?)")

    def from_int(self, n: int):
        return self._wrap((n % self.p,))

    def embed(self, a):
        """Embed an F_p element (int) into this field."""
        return self.from_int(a)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def elements(self):
        out = []

        def rec(i, acc):
            if i == self.e:
                out.append(tuple(acc))
                return
            for c in range(self.p):
                rec(i + 1, acc + [c])

        rec(0, [])
        return out

    def rand(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.e))

    def spec(self) -> dict:
        return {
            "kind": self.kind,
            "characteristic": self.p,
            "order": self.p**self.e,
            "modulus": list(self.modulus),
        }

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and other.p == self.p
            and other.e == self.e
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("galois-field", self.p, self.e, self.modulus))

    def __repr__(self):
        return f"F{self.p}^{self.e}"


def scalar_to_json(field, x):
    """Canonical JSON encoding of one field element."""
    if isinstance(field, PrimeField):
        return int(x)
    if isinstance(field, Rationals):
        return str(x)
    if isinstance(field, GaloisField):
        return list(x)
    raise TypeError(f"unknown field {field!r}")


def scalar_from_json(field, v):
    if isinstance(field, PrimeField):
        return int(v) % field.p
    if isinstance(field, Rationals):
        return Fraction(str(v))
    if isinstance(field, GaloisField):
        coeffs = [int(c) % field.p for c in v]
        return tuple(coeffs + [0] * (field.e - len(coeffs)))
    raise TypeError(f"unknown field {field!r}")


def parse_field(spec) -> object:
    """Parse a field literal: 'f2', 'f4', 'q', or {'kind': ..., ...}."""
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in ("q", "qq", "rationals"):
            return Rationals()
        if s.startswith("f"):
            q = int(s[1:])
            if is_prime(q):
                return PrimeField(q)
            for p in range(2, q + 1):
                if is_prime(p):
                    e = 0
                    m = q
                    while m % p == 0:
                        m //= p
                        e += 1
                    if m == 1 and e >= 1:
                        return GaloisField(p, e)
            raise ValueError(f"{spec!r} is not a prime power field")
        raise ValueError(f"unrecognized field literal {spec!r}")
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind in ("rationals", "q"):
            return Rationals()
        if kind in ("prime-field", "prime"):
            return PrimeField(int(spec["p"]))
        if kind in ("galois-field", "gf"):
            return GaloisField(int(spec["p"]), int(spec["e"]), spec.get("modulus"))
    raise ValueError(f"unrecognized field literal {spec!r}")
