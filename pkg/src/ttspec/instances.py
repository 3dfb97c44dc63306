"""Concrete triangulated tensor category instances and their point functors.

An instance bundles the object calculus (complexes, tensor, shift, cone), a
finite list of spectrum points with exact evaluators, and an indecomposable
pool where one exists.  Tensor hooks are spot-checked at construction, and
transported instances (twisted tensor products) reuse the same interface.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import (
    BoundedComplex,
    ChainMap,
    RepCat,
    cone,
    derived_tensor,
    shift_complex,
    stalk_complex,
    sum_complexes,
    vertex_cohomology_dims,
)
from .derivedhom import PoolCalculus, chain_map_space
from .quivers import Quiver, Rep, RepMorphism, list_indecomposables, random_rep
from .rings import FiniteRing, FreeCat, RingMatrix, fiber, primes


def convolve_graded(a: dict, b: dict) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def add_graded(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


class SpectrumPoint:
    """A tensor-functor point: tag, residue field, and an exact evaluator."""

    def __init__(self, instance, tag: str, residue_field):
        self.instance = instance
        self.tag = tag
        self.residue_field = residue_field

    def evaluate(self, obj) -> dict:
        return self.instance.evaluate(self, obj)

    def kernel_classes(self) -> frozenset:
        return self.instance.kernel_classes(self)

    def __repr__(self):
        return f"SpectrumPoint({self.tag})"


class QuiverInstance:
    """D^b of representations of a finite acyclic quiver, vertex-wise tensor."""

    kind = "quiver"

    def __init__(self, quiver: Quiver, field, name: str | None = None, self_check: bool = True):
        quiver.topological_order()
        self.quiver = quiver
        self.field = field
        self.name = name or f"quiver({','.join(quiver.vertices)})"
        self.cat = RepCat(quiver, field)
        pool = list_indecomposables(quiver, field)
        self.pool_reps = pool.reps
        self.pool_labels = pool.labels
        self.pool_complete = pool.complete
        self.calc = PoolCalculus(self.cat, pool.reps, pool.labels)
        self.points = [SpectrumPoint(self, v, field) for v in quiver.vertices]
        if self_check:
            self._spot_check()

    # -- objects -------------------------------------------------------------

    def unit_complex(self) -> BoundedComplex:
        return stalk_complex(self.cat, self.cat.unit_obj())

    def zero_complex(self) -> BoundedComplex:
        return BoundedComplex(self.cat, {}, {})

    def pool_complex(self, i: int) -> BoundedComplex:
        return stalk_complex(self.cat, self.pool_reps[i])

    def shift(self, c: BoundedComplex, n: int) -> BoundedComplex:
        return shift_complex(c, n)

    def sum(self, a: BoundedComplex, b: BoundedComplex) -> BoundedComplex:
        return sum_complexes(a, b)

    def tensor(self, a: BoundedComplex, b: BoundedComplex) -> BoundedComplex:
        return derived_tensor(a, b)

    def cone_complex(self, f: ChainMap) -> BoundedComplex:
        return cone(f).complex

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point: SpectrumPoint, c: BoundedComplex) -> dict:
        return vertex_cohomology_dims(c, point.tag)

    def kernel_classes(self, point: SpectrumPoint) -> frozenset:
        return frozenset(
            i for i in range(len(self.pool_reps)) if not self.evaluate(point, self.pool_complex(i))
        )

    def support_of(self, c: BoundedComplex) -> frozenset:
        return frozenset(pt.tag for pt in self.points if self.evaluate(pt, c))

    def open_of(self, c: BoundedComplex) -> frozenset:
        return frozenset(pt.tag for pt in self.points) - self.support_of(c)

    def classes_of(self, c: BoundedComplex) -> frozenset:
        return self.calc.classes_of_complex(c)

    # -- sampling ----------------------------------------------------------------

    def sample_object(self, rng: random.Random, depth: int = 2) -> BoundedComplex:
        choice = rng.randrange(10)
        if choice == 0:
            return self.zero_complex()
        if choice <= 3 or depth <= 0:
            return stalk_complex(
                self.cat, random_rep(self.quiver, self.field, rng), rng.randint(-1, 1)
            )
        if choice <= 5:
            v = random_rep(self.quiver, self.field, rng)
            w = random_rep(self.quiver, self.field, rng)
            from .quivers import hom_space

            homs = hom_space(v, w)
            f = RepMorphism.zero(v, w)
            for h in homs:
                f = f.add(h.scale(self.field.rand(rng)))
            deg = rng.randint(-1, 0)
            return BoundedComplex(self.cat, {deg: v, deg + 1: w}, {deg: f})
        if choice <= 7:
            return sum_complexes(
                self.sample_object(rng, depth - 1), self.sample_object(rng, depth - 1)
            )
        a = self.sample_object(rng, 0)
        b = self.sample_object(rng, 0)
        f = self.sample_chain_map_between(a, b, rng)
        return cone(f).complex

    def sample_chain_map(self, rng: random.Random):
        a = self.sample_object(rng, 1)
        b = self.sample_object(rng, 1)
        return self.sample_chain_map_between(a, b, rng)

    def sample_chain_map_between(self, a, b, rng: random.Random) -> ChainMap:
        basis = chain_map_space(a, b)
        f = ChainMap.zero(a, b)
        for h in basis:
            c = self.field.rand(rng)
            if not self.field.is_zero(c):
                f = f.add(h.scale(c))
        return f

    # -- construction-time invariants -------------------------------------------

    def _spot_check(self):
        unit = self.unit_complex()
        for pt in self.points:
            if self.evaluate(pt, unit) != {0: 1}:
                raise ValueError(f"unit object does not evaluate to the ground field at {pt.tag}")
        rng = random.Random(99)
        for _ in range(3):
            a = self.sample_object(rng, 1)
            b = self.sample_object(rng, 1)
            t = self.tensor(a, b)
            for pt in self.points:
                expected = convolve_graded(self.evaluate(pt, a), self.evaluate(pt, b))
                if self.evaluate(pt, t) != expected:
                    raise ValueError("tensor hook fails the exactness spot check")

    def __repr__(self):
        return f"QuiverInstance({self.name})"


class RingInstance:
    """Perfect complexes over a finite commutative ring (free representatives)."""

    kind = "ring"

    def __init__(self, ring: FiniteRing, name: str | None = None, self_check: bool = True):
        self.ring = ring
        self.name = name or repr(ring)
        self.cat = FreeCat(ring)
        self.prime_points = primes(ring)
        self.points = [SpectrumPoint(self, pt.label, pt.residue_field) for pt in self.prime_points]
        self._by_tag = {pt.label: pt for pt in self.prime_points}
        self.pool_complexes = [stalk_complex(self.cat, 1)]
        self.pool_labels = ["unit"]
        for pt in self.prime_points:
            elem = self._koszul_element(pt)
            self.pool_complexes.append(self._two_term(elem))
            self.pool_labels.append(f"kos{pt.label}")
        self.pool_complete = True  # complete as support generators, not as objects
        if self_check:
            self._spot_check()

    def _koszul_element(self, point):
        """A ring element dying exactly at the given prime."""
        for r in self.ring.elements():
            fld_here = point.residue_field
            dies_here = fld_here.is_zero(point.reduce(r))
            unit_elsewhere = all(
                not other.residue_field.is_zero(other.reduce(r))
                for other in self.prime_points
                if other.label != point.label
            )
            if dies_here and unit_elsewhere:
                return r
        raise RuntimeError(f"no element supported exactly at {point.label}")

    def _two_term(self, element, degree: int = 0):
        d = RingMatrix(self.ring, 1, 1, [element])
        return BoundedComplex(self.cat, {degree: 1, degree + 1: 1}, {degree: d})

    # -- objects -------------------------------------------------------------

    def unit_complex(self) -> BoundedComplex:
        return stalk_complex(self.cat, 1)

    def zero_complex(self) -> BoundedComplex:
        return BoundedComplex(self.cat, {}, {})

    def pool_complex(self, i: int) -> BoundedComplex:
        return self.pool_complexes[i]

    def shift(self, c, n):
        return shift_complex(c, n)

    def sum(self, a, b):
        return sum_complexes(a, b)

    def tensor(self, a, b):
        return derived_tensor(a, b)

    def cone_complex(self, f: ChainMap) -> BoundedComplex:
        return cone(f).complex

    # -- evaluation ------------------------------------------------------------

    def evaluate(self, point: SpectrumPoint, c: BoundedComplex) -> dict:
        return fiber(c, self._by_tag[point.tag]).cohomology_dims()

    def kernel_classes(self, point: SpectrumPoint) -> frozenset:
        return frozenset(
            i
            for i in range(len(self.pool_complexes))
            if not self.evaluate(point, self.pool_complexes[i])
        )

    def support_of(self, c: BoundedComplex) -> frozenset:
        return frozenset(pt.tag for pt in self.points if self.evaluate(pt, c))

    def open_of(self, c: BoundedComplex) -> frozenset:
        return frozenset(pt.tag for pt in self.points) - self.support_of(c)

    # -- sampling ----------------------------------------------------------------

    def _random_matrix(self, rng, rows, cols) -> RingMatrix:
        elems = self.ring.elements()
        return RingMatrix(self.ring, rows, cols, [rng.choice(elems) for _ in range(rows * cols)])

    def sample_object(self, rng: random.Random, depth: int = 2) -> BoundedComplex:
        choice = rng.randrange(10)
        if choice == 0:
            return self.zero_complex()
        if choice <= 3 or depth <= 0:
            return stalk_complex(self.cat, rng.randint(1, 2), rng.randint(-1, 1))
        if choice <= 6:
            a, b = rng.randint(1, 2), rng.randint(1, 2)
            deg = rng.randint(-1, 0)
            return BoundedComplex(
                self.cat, {deg: a, deg + 1: b}, {deg: self._random_matrix(rng, b, a)}
            )
        if choice <= 8:
            return sum_complexes(
                self.sample_object(rng, depth - 1), self.sample_object(rng, depth - 1)
            )
        return derived_tensor(self.sample_object(rng, 0), self.sample_object(rng, 0))

    def sample_chain_map(self, rng: random.Random) -> ChainMap:
        choice = rng.randrange(3)
        if choice == 0:
            # free map between stalks in a common degree
            deg = rng.randint(-1, 1)
            a = stalk_complex(self.cat, rng.randint(1, 2), deg)
            b = stalk_complex(self.cat, rng.randint(1, 2), deg)
            m = self._random_matrix(rng, b.obj(deg), a.obj(deg))
            return ChainMap(a, b, {deg: m})
        if choice == 1:
            # a ring scalar times the identity
            c = self.sample_object(rng, 1)
            scalar = rng.choice(self.ring.elements())
            comps = {i: self.cat.identity(c.obj(i)).scale(scalar) for i in c.degrees()}
            return ChainMap(c, c, comps)
        # tensor an existing map with an identity
        inner = self.sample_chain_map(rng)
        c = stalk_complex(self.cat, rng.randint(1, 2), 0)
        src = derived_tensor(inner.source, c)
        tgt = derived_tensor(inner.target, c)
        comps = {}
        for i in src.degrees():
            blocks = inner.comp(i).kron(self.cat.identity(c.obj(0)))
            comps[i] = blocks
        return ChainMap(src, tgt, comps)

    # -- construction-time invariants -------------------------------------------

    def _spot_check(self):
        unit = self.unit_complex()
        for pt in self.points:
            if self.evaluate(pt, unit) != {0: 1}:
                raise ValueError(f"unit object does not evaluate to the residue field at {pt.tag}")
        rng = random.Random(98)
        for _ in range(3):
            a = self.sample_object(rng, 1)
            b = self.sample_object(rng, 1)
            t = self.tensor(a, b)
            for pt in self.points:
                expected = convolve_graded(self.evaluate(pt, a), self.evaluate(pt, b))
                if self.evaluate(pt, t) != expected:
                    raise ValueError("tensor hook fails the exactness spot check")

    def __repr__(self):
        return f"RingInstance({self.name})"


# ---------------------------------------------------------------------------
# transported tensor structures


def relabel_rep(rep: Rep, sigma: dict, arrow_map: dict) -> Rep:
    """Push a representation along a quiver automorphism."""
    inverse = {w: v for v, w in sigma.items()}
    dims = {v: rep.dims[inverse[v]] for v in rep.quiver.vertices}
    inv_arrow = {new: old for old, new in arrow_map.items()}
    mats = {}
    for a in rep.quiver.arrows:
        mats[a.label] = rep.mats[inv_arrow[a.label]]
    return Rep(rep.quiver, rep.field, dims, mats)


def relabel_complex(c: BoundedComplex, sigma: dict, arrow_map: dict) -> BoundedComplex:
    cat = c.cat
    inverse = {w: v for v, w in sigma.items()}
    objects = {i: relabel_rep(o, sigma, arrow_map) for i, o in c.objects.items()}
    diffs = {}
    for i, d in c.diffs.items():
        comps = {v: d.comps[inverse[v]] for v in cat.quiver.vertices}
        diffs[i] = RepMorphism(objects[i], objects[i + 1], comps, check=False)
    return BoundedComplex(cat, objects, diffs, check=False)


def quiver_automorphism_maps(quiver: Quiver, sigma: dict):
    """Validate a vertex bijection as a quiver automorphism; return the arrow map."""
    if sorted(sigma) != sorted(quiver.vertices) or sorted(sigma.values()) != sorted(
        quiver.vertices
    ):
        raise ValueError("sigma is not a bijection on the vertices")
    arrow_map = {}
    remaining = {a.label: a for a in quiver.arrows}
    for a in quiver.arrows:
        image = next(
            (
                b
                for b in remaining.values()
                if b.src == sigma[a.src] and b.tgt == sigma[a.tgt] and b.label not in arrow_map.values()
            ),
            None,
        )
        if image is None:
            raise ValueError(f"arrow {a.label!r} has no image under sigma")
        arrow_map[a.label] = image.label
    return arrow_map


class TransportedInstance:
    """An instance with the same objects but a transported tensor structure."""

    kind = "quiver-transported"

    def __init__(self, base: QuiverInstance, description: str):
        self.base = base
        self.description = description
        self.quiver = base.quiver
        self.field = base.field
        self.cat = base.cat
        self.pool_reps = base.pool_reps
        self.pool_labels = base.pool_labels
        self.calc = base.calc
        self.name = f"{base.name}/{description}"
        self.points = [SpectrumPoint(self, pt.tag, pt.residue_field) for pt in base.points]

    # subclasses override: tensor, unit_complex, evaluate

    def zero_complex(self):
        return self.base.zero_complex()

    def pool_complex(self, i):
        return self.base.pool_complex(i)

    def shift(self, c, n):
        return self.base.shift(c, n)

    def sum(self, a, b):
        return self.base.sum(a, b)

    def cone_complex(self, f):
        return self.base.cone_complex(f)

    def sample_object(self, rng, depth: int = 2):
        return self.base.sample_object(rng, depth)

    def sample_chain_map(self, rng):
        return self.base.sample_chain_map(rng)

    def support_of(self, c):
        return frozenset(pt.tag for pt in self.points if self.evaluate(pt, c))

    def open_of(self, c):
        return frozenset(pt.tag for pt in self.points) - self.support_of(c)

    def kernel_classes(self, point):
        return frozenset(
            i for i in range(len(self.pool_reps)) if not self.evaluate(point, self.pool_complex(i))
        )

    def classes_of(self, c):
        return self.base.classes_of(c)


class CorruptedTensorInstance:
    """Fault-injection wrapper: the tensor hook collapses everything to zero.

    Exists so that axiom verification demonstrably catches a broken tensor;
    never used outside tests and the fault-injection CLI mode.
    """

    def __init__(self, base):
        self._base = base
        self.name = f"{base.name}/corrupted-tensor"

    def tensor(self, a, b):
        return self._base.zero_complex()

    def __getattr__(self, name):
        return getattr(self._base, name)


class ShiftTwistInstance(TransportedInstance):
    """Tensor twisted by an invertible unit shift: a (x)_0 b = (a (x) b)[-s]."""

    def __init__(self, base: QuiverInstance, s: int):
        super().__init__(base, f"shift-twist[{s}]")
        self.s = s

    def tensor(self, a, b):
        return shift_complex(self.base.tensor(a, b), -self.s)

    def unit_complex(self):
        return shift_complex(self.base.unit_complex(), self.s)

    def evaluate(self, point, c):
        base_pt = next(pt for pt in self.base.points if pt.tag == point.tag)
        dims = self.base.evaluate(base_pt, shift_complex(c, -self.s))
        return dims


class AutomorphismTwistInstance(TransportedInstance):
    """Tensor conjugated by a quiver automorphism; points become composites."""

    def __init__(self, base: QuiverInstance, sigma: dict):
        arrow_map = quiver_automorphism_maps(base.quiver, sigma)
        super().__init__(base, f"automorphism({','.join(f'{v}->{w}' for v, w in sorted(sigma.items()))})")
        self.sigma = sigma
        self.arrow_map = arrow_map
        self.inverse = {w: v for v, w in sigma.items()}

    def _push(self, c):
        return relabel_complex(c, self.sigma, self.arrow_map)

    def _pull(self, c):
        inv_arrows = {v: k for k, v in self.arrow_map.items()}
        return relabel_complex(c, self.inverse, inv_arrows)

    def tensor(self, a, b):
        return self._pull(self.base.tensor(self._push(a), self._push(b)))

    def unit_complex(self):
        return self._pull(self.base.unit_complex())

    def evaluate(self, point, c):
        pushed = self._push(c)
        base_pt = next(pt for pt in self.base.points if pt.tag == point.tag)
        return self.base.evaluate(base_pt, pushed)
