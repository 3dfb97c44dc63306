"""Support data, thick tensor ideals, prime spectra, and comparison maps.

Everything here is computed exactly on finite instances: supports by
evaluating point functors, ideals by exhaustive closure over the
indecomposable pool (quiver case) or by support subsets (ring case), and the
comparison map point -> kernel by direct kernel computation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .derivedhom import quotient_hom_bounded, tensor_ideal_closure
from .instances import QuiverInstance, RingInstance, SpectrumPoint
from .rings import local_ring_check, localize, primes as ring_primes


# ---------------------------------------------------------------------------
# support data axioms


@dataclass
class AxiomReport:
    instance_name: str
    samples: int
    results: dict  # axiom -> {"checks": int, "failures": int, "witness": str | None}

    @property
    def passed(self) -> bool:
        return all(r["failures"] == 0 for r in self.results.values())

    def as_dict(self) -> dict:
        return {
            "instance": self.instance_name,
            "samples": self.samples,
            "passed": self.passed,
            "axioms": {k: dict(v) for k, v in sorted(self.results.items())},
        }


def _axiom_slot():
    return {"checks": 0, "failures": 0, "witness": None}


def verify_support_data(instance, samples: int = 200, seed: int = 0) -> AxiomReport:
    """Check the support-data axioms on sampled objects and morphisms."""
    rng = random.Random(seed)
    results = {
        "zero-object-empty-support": _axiom_slot(),
        "unit-full-support": _axiom_slot(),
        "shift-invariance": _axiom_slot(),
        "sum-union": _axiom_slot(),
        "cone-subadditivity": _axiom_slot(),
        "tensor-intersection": _axiom_slot(),
    }
    all_points = frozenset(pt.tag for pt in instance.points)

    def record(name, ok, witness):
        slot = results[name]
        slot["checks"] += 1
        if not ok and slot["failures"] == 0:
            slot["witness"] = witness
        if not ok:
            slot["failures"] += 1

    record(
        "zero-object-empty-support",
        instance.support_of(instance.zero_complex()) == frozenset(),
        "zero object",
    )
    record(
        "unit-full-support",
        instance.support_of(instance.unit_complex()) == all_points,
        "unit object",
    )
    per_axiom = max(1, samples // 4)
    for _ in range(per_axiom):
        a = instance.sample_object(rng)
        record(
            "shift-invariance",
            instance.support_of(instance.shift(a, 1)) == instance.support_of(a),
            f"shift of object with support {sorted(instance.support_of(a))}",
        )
    for _ in range(per_axiom):
        a = instance.sample_object(rng)
        b = instance.sample_object(rng)
        record(
            "sum-union",
            instance.support_of(instance.sum(a, b))
            == instance.support_of(a) | instance.support_of(b),
            f"supports {sorted(instance.support_of(a))}, {sorted(instance.support_of(b))}",
        )
    for _ in range(per_axiom):
        f = instance.sample_chain_map(rng)
        sa = instance.support_of(f.source)
        sb = instance.support_of(f.target)
        sc = instance.support_of(instance.cone_complex(f))
        record("cone-subadditivity", sc <= sa | sb, f"cone support {sorted(sc)}")
    for _ in range(per_axiom):
        a = instance.sample_object(rng)
        b = instance.sample_object(rng)
        record(
            "tensor-intersection",
            instance.support_of(instance.tensor(a, b))
            == instance.support_of(a) & instance.support_of(b),
            f"supports {sorted(instance.support_of(a))}, {sorted(instance.support_of(b))}",
        )
    return AxiomReport(instance_name=instance.name, samples=samples, results=results)


def pool_pair_support_checks(instance) -> dict:
    """Exhaustive tensor/sum support identities over pool pairs, plus basics.

    Includes the basic-open shadows: every pool object lies in the ideal of
    its own vanishing open, and opens shrink under direct sums.
    """
    n = _pool_size(instance)
    tensor_ok = True
    sum_ok = True
    basic_ok = True
    monotone_ok = True
    for i in range(n):
        a = instance.pool_complex(i)
        sa = instance.support_of(a)
        ideal = ideal_of_open(instance, instance.open_of(a))
        if not object_in_ideal(instance, a, ideal):
            basic_ok = False
        for j in range(n):
            b = instance.pool_complex(j)
            sb = instance.support_of(b)
            if instance.support_of(instance.tensor(a, b)) != sa & sb:
                tensor_ok = False
            if instance.support_of(instance.sum(a, b)) != sa | sb:
                sum_ok = False
            if not instance.open_of(instance.sum(a, b)) <= instance.open_of(a):
                monotone_ok = False
    return {
        "tensor-intersection-exhaustive": tensor_ok,
        "sum-union-exhaustive": sum_ok,
        "object-in-ideal-of-its-open": basic_ok,
        "sum-open-shrinks": monotone_ok,
    }


# ---------------------------------------------------------------------------
# thick tensor ideals


@dataclass(frozen=True)
class ThickIdeal:
    instance_kind: str
    members: frozenset  # pool indices
    support_set: frozenset  # point tags S with members = {m : s(m) <= S}
    complete: bool

    def key(self):
        return tuple(sorted(self.members))


def _pool_size(instance) -> int:
    if hasattr(instance, "pool_reps"):
        return len(instance.pool_reps)
    return len(instance.pool_complexes)


def _pool_supports(instance):
    return [instance.support_of(instance.pool_complex(i)) for i in range(_pool_size(instance))]


def ideal_of_open(instance, open_tags: frozenset) -> ThickIdeal:
    """The ideal of objects vanishing on an open set: pool members killed there."""
    supports = _pool_supports(instance)
    members = frozenset(
        i for i, s in enumerate(supports) if not (s & open_tags)
    )
    all_tags = frozenset(pt.tag for pt in instance.points)
    support_set = all_tags - frozenset(open_tags)
    complete = True
    if instance.kind in ("quiver", "quiver-transported"):
        closure = tensor_ideal_closure(members, instance.calc)
        complete = closure.fixed_point and closure.classes == members
    return ThickIdeal(
        instance_kind=instance.kind,
        members=members,
        support_set=support_set,
        complete=complete,
    )


def object_in_ideal(instance, c, ideal: ThickIdeal) -> bool:
    if instance.kind in ("quiver", "quiver-transported"):
        return instance.classes_of(c) <= ideal.members
    return instance.support_of(c) <= ideal.support_set


def enumerate_thick_tensor_ideals(instance):
    """All thick tensor ideals, by exhaustive closure (quiver) or supports (ring)."""
    n = _pool_size(instance)
    supports = _pool_supports(instance)
    all_tags = frozenset(pt.tag for pt in instance.points)
    ideals = {}
    if instance.kind in ("quiver", "quiver-transported"):
        for subset_bits in range(2**n):
            gens = frozenset(i for i in range(n) if subset_bits >> i & 1)
            closure = tensor_ideal_closure(gens, instance.calc)
            if not closure.fixed_point:
                raise RuntimeError("ideal closure did not reach a fixed point in budget")
            members = closure.classes
            support_set = frozenset().union(*(supports[i] for i in members)) if members else frozenset()
            ideals[members] = ThickIdeal(
                instance_kind=instance.kind,
                members=members,
                support_set=support_set,
                complete=True,
            )
    elif instance.kind == "ring":
        tags = sorted(all_tags)
        for r in range(len(tags) + 1):
            for combo in itertools.combinations(tags, r):
                s = frozenset(combo)
                members = frozenset(i for i in range(n) if supports[i] <= s)
                ideals[s] = ThickIdeal(
                    instance_kind="ring", members=members, support_set=s, complete=True
                )
    else:
        raise ValueError(f"no ideal enumeration for instance kind {instance.kind!r}")
    out = sorted(ideals.values(), key=lambda ideal: (len(ideal.members), ideal.key()))
    return out


def ideal_lattice_closed_under_intersection(instance, ideals) -> bool:
    keys = {ideal.key() for ideal in ideals}
    for a in ideals:
        for b in ideals:
            meet = a.members & b.members
            if tuple(sorted(meet)) not in keys:
                return False
    return True


def is_prime_ideal(instance, ideal: ThickIdeal) -> bool:
    """a (x) b in P implies a in P or b in P, tested over pool pairs."""
    n = _pool_size(instance)
    if len(ideal.members) == n:
        return False  # not proper
    for i in range(n):
        for j in range(n):
            t = instance.tensor(instance.pool_complex(i), instance.pool_complex(j))
            if object_in_ideal(instance, t, ideal):
                if i not in ideal.members and j not in ideal.members:
                    return False
    return True


@dataclass
class BalmerData:
    ideals: list
    primes: list
    lattice_closed: bool

    def as_dict(self) -> dict:
        return {
            "ideal_count": len(self.ideals),
            "prime_count": len(self.primes),
            "ideals": [sorted(i.members) for i in self.ideals],
            "primes": [sorted(p.members) for p in self.primes],
            "lattice_closed_under_intersection": self.lattice_closed,
        }


def balmer_spectrum(instance) -> BalmerData:
    ideals = enumerate_thick_tensor_ideals(instance)
    prime_list = [p for p in ideals if is_prime_ideal(instance, p)]
    return BalmerData(
        ideals=ideals,
        primes=prime_list,
        lattice_closed=ideal_lattice_closed_under_intersection(instance, ideals),
    )


# ---------------------------------------------------------------------------
# the comparison map [F] -> ker(F)


@dataclass
class ComparisonReport:
    point_kernels: dict  # tag -> sorted member list
    injective: bool
    surjective: bool
    continuous: bool
    open_map: bool
    unmatched_primes: list

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def as_dict(self) -> dict:
        return {
            "kernels": {k: list(v) for k, v in sorted(self.point_kernels.items())},
            "injective": self.injective,
            "surjective": self.surjective,
            "continuous": self.continuous,
            "open_map": self.open_map,
            "unmatched_primes": self.unmatched_primes,
        }


def comparison_map(instance, balmer: BalmerData | None = None) -> ComparisonReport:
    if balmer is None:
        balmer = balmer_spectrum(instance)
    kernels = {}
    for pt in instance.points:
        kernels[pt.tag] = tuple(sorted(pt.kernel_classes()))
    injective = len(set(kernels.values())) == len(kernels)
    prime_keys = {p.key() for p in balmer.primes}
    images = set(kernels.values())
    surjective = prime_keys <= images and images <= prime_keys
    unmatched = [list(k) for k in sorted(prime_keys - images)]
    # continuity: preimage of the basic open U(a) is the vanishing open U_a
    continuous = True
    open_map = True
    n = _pool_size(instance)
    prime_by_key = {p.key(): p for p in balmer.primes}
    for i in range(n):
        u_a = {pt.tag for pt in instance.points if not instance.evaluate(pt, instance.pool_complex(i))}
        # f^{-1}(U(a)): points whose kernel contains a
        preimage = {pt.tag for pt in instance.points if i in set(kernels[pt.tag])}
        if preimage != u_a:
            continuous = False
        image_of_open = {kernels[t] for t in u_a}
        u_of_a = {p.key() for p in balmer.primes if i in set(p.key())}
        if image_of_open != (u_of_a & images):
            open_map = False
    return ComparisonReport(
        point_kernels={k: list(v) for k, v in kernels.items()},
        injective=injective,
        surjective=surjective,
        continuous=continuous,
        open_map=open_map,
        unmatched_primes=unmatched,
    )


# ---------------------------------------------------------------------------
# localization: points of T/T^{U_a} match the open U_a


@dataclass
class LocalizationReport:
    per_object: dict  # pool label -> {"open": [...], "quotient_points": [...], "match": bool}

    @property
    def passed(self) -> bool:
        return all(entry["match"] for entry in self.per_object.values())

    def as_dict(self) -> dict:
        return {"passed": self.passed, "objects": self.per_object}


def localization_points(instance) -> LocalizationReport:
    """For each pool object a: points killing a = U_a = points whose kernel contains T^{U_a}."""
    out = {}
    labels = instance.pool_labels
    for i in range(_pool_size(instance)):
        a = instance.pool_complex(i)
        u_a = instance.open_of(a)
        ideal = ideal_of_open(instance, u_a)
        killers = frozenset(
            pt.tag for pt in instance.points if not instance.evaluate(pt, a)
        )
        containing = frozenset(
            pt.tag for pt in instance.points if ideal.members <= pt.kernel_classes()
        )
        out[labels[i]] = {
            "open": sorted(u_a),
            "quotient_points": sorted(killers),
            "kernel_contains_ideal": sorted(containing),
            "match": killers == u_a == containing,
        }
    return LocalizationReport(per_object=out)


# ---------------------------------------------------------------------------
# functoriality: maps induced by tensor functors


@dataclass
class GammaReport:
    accepted: bool
    reason: str
    point_map: dict  # source-instance tag -> target-instance tag
    point_map_verified: bool
    continuity: bool
    pullback_consistent: bool | None

    @property
    def passed(self) -> bool:
        return (
            self.accepted
            and self.point_map_verified
            and self.continuity
            and self.pullback_consistent is not False
        )

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "reason": self.reason,
            "point_map": dict(sorted(self.point_map.items())),
            "point_map_verified": self.point_map_verified,
            "continuity": self.continuity,
            "path_algebra_pullback": self.pullback_consistent,
            "passed": self.passed,
        }


def _spot_check_tensor_functor(big, small, g, rng_seed: int = 123) -> str | None:
    """Unit and tensor compatibility of g on samples; None when it passes."""
    unit_image = g(big.unit_complex())
    for pt in small.points:
        if small.evaluate(pt, unit_image) != {0: 1}:
            return f"unit object is not preserved at {pt.tag}"
    rng = random.Random(rng_seed)
    for _ in range(4):
        a = big.sample_object(rng, 1)
        b = big.sample_object(rng, 1)
        lhs = g(big.tensor(a, b))
        rhs = small.tensor(g(a), g(b))
        for pt in small.points:
            if small.evaluate(pt, lhs) != small.evaluate(pt, rhs):
                return f"tensor compatibility fails at {pt.tag}"
    return None


def gamma_for_functor(big, small, g, point_map: dict) -> GammaReport:
    """Validate g as a tensor functor and check the induced point map.

    point_map sends tags of `small` (the functor's target instance) to tags
    of `big`; the composite point must agree with the named point of `big`
    on the whole pool.
    """
    reason = _spot_check_tensor_functor(big, small, g)
    if reason is not None:
        return GammaReport(
            accepted=False,
            reason=reason,
            point_map={},
            point_map_verified=False,
            continuity=False,
            pullback_consistent=None,
        )
    small_by_tag = {pt.tag: pt for pt in small.points}
    big_by_tag = {pt.tag: pt for pt in big.points}
    verified = True
    for src_tag, tgt_tag in point_map.items():
        q = small_by_tag[src_tag]
        target = big_by_tag[tgt_tag]
        for i in range(_pool_size(big)):
            a = big.pool_complex(i)
            if small.evaluate(q, g(a)) != big.evaluate(target, a):
                verified = False
    continuity = True
    for i in range(_pool_size(big)):
        a = big.pool_complex(i)
        u_a = big.open_of(a)
        preimage = frozenset(tag for tag, tgt in point_map.items() if tgt in u_a)
        u_ga = small.open_of(g(a))
        if preimage != u_ga:
            continuity = False
    return GammaReport(
        accepted=True,
        reason="",
        point_map=dict(point_map),
        point_map_verified=verified,
        continuity=continuity,
        pullback_consistent=None,
    )


def restrict_complex_to_subquiver(big: QuiverInstance, small: QuiverInstance, c):
    """Restriction of a complex along a full subquiver inclusion."""
    from .complexes import BoundedComplex
    from .quivers import Rep, RepMorphism

    keep = set(small.quiver.vertices)
    keep_arrows = {a.label for a in small.quiver.arrows}

    def restrict_rep(rep):
        dims = {v: rep.dims[v] for v in small.quiver.vertices}
        mats = {label: rep.mats[label] for label in keep_arrows}
        return Rep(small.quiver, small.field, dims, mats)

    objects = {i: restrict_rep(o) for i, o in c.objects.items()}
    diffs = {}
    for i, d in c.diffs.items():
        comps = {v: d.comps[v] for v in keep}
        diffs[i] = RepMorphism(objects[i], objects[i + 1], comps, check=False)
    return BoundedComplex(small.cat, objects, diffs, check=False)


def gamma_subquiver(big: QuiverInstance, vertices) -> tuple[GammaReport, QuiverInstance]:
    sub = big.quiver.full_subquiver(vertices)
    if {a.label for a in sub.arrows} != {
        a.label for a in big.quiver.arrows if a.src in set(vertices) and a.tgt in set(vertices)
    }:
        raise ValueError("subquiver must be full")
    small = QuiverInstance(sub, big.field, name=f"{big.name}|{','.join(sub.vertices)}")

    def g(c):
        return restrict_complex_to_subquiver(big, small, c)

    point_map = {v: v for v in sub.vertices}
    report = gamma_for_functor(big, small, g, point_map)
    if report.accepted:
        report = _check_path_pullback(big, small, g, report)
    return report, small


def _check_path_pullback(big, small, g, report: GammaReport) -> GammaReport:
    """A(g) on realized paths: pulling a path transformation back along the
    restriction agrees with realizing the same path in the big instance."""
    from .complexes import cohomology
    from .quivers import enumerate_paths

    ok = True
    for p in enumerate_paths(small.quiver):
        for i in range(_pool_size(big)):
            x = big.pool_complex(i)
            h_big = cohomology(x)
            h_small = cohomology(g(x))
            for deg, rep in h_big.reps.items():
                lhs = rep.path_matrix(p)
                small_rep = h_small.reps.get(deg)
                if small_rep is None:
                    if lhs.rows and lhs.cols and not lhs.is_zero():
                        ok = False
                    continue
                rhs = small_rep.path_matrix(p)
                if (lhs.rows, lhs.cols) != (rhs.rows, rhs.cols) or lhs.entries != rhs.entries:
                    ok = False
    report.pullback_consistent = ok
    return report


def gamma_ring_quotient(big: RingInstance, small: RingInstance) -> GammaReport:
    """Base change along a CRT-compatible quotient such as Z/12 -> Z/3."""
    from .complexes import BoundedComplex
    from .rings import RingMatrix, ZmodRing

    if not isinstance(big.ring, ZmodRing) or not isinstance(small.ring, ZmodRing):
        raise ValueError("ring base change is supported between Z/n quotients")
    if big.ring.n % small.ring.n != 0:
        raise ValueError("target modulus must divide the source modulus")

    def g(c):
        objects = {i: c.obj(i) for i in c.degrees()}
        diffs = {}
        for i, d in c.diffs.items():
            diffs[i] = RingMatrix(
                small.ring, d.rows, d.cols, [x % small.ring.n for x in d.entries]
            )
        return BoundedComplex(small.cat, objects, diffs, check=False)

    point_map = {}
    big_tags = {pt.tag for pt in big.points}
    for pt in small.points:
        if pt.tag not in big_tags:
            raise ValueError(f"prime {pt.tag} of the quotient is not a prime of the source")
        point_map[pt.tag] = pt.tag
    return gamma_for_functor(big, small, g, point_map)


# ---------------------------------------------------------------------------
# transported tensor structures


@dataclass
class TransportReport:
    description: str
    accepted: bool
    reason: str
    unit_law: bool
    monoidal_points: bool
    point_count_match: bool
    supports_match_expected: bool
    expected_bijection: dict

    @property
    def passed(self) -> bool:
        return (
            self.accepted
            and self.unit_law
            and self.monoidal_points
            and self.point_count_match
            and self.supports_match_expected
        )

    def as_dict(self) -> dict:
        return {
            "description": self.description,
            "accepted": self.accepted,
            "reason": self.reason,
            "unit_law": self.unit_law,
            "monoidal_points": self.monoidal_points,
            "point_count_match": self.point_count_match,
            "supports_match_expected": self.supports_match_expected,
            "expected_bijection": dict(sorted(self.expected_bijection.items())),
            "passed": self.passed,
        }


def transport_tensor(base: QuiverInstance, data: dict):
    """Build a transported tensor structure and verify its spectrum matches."""
    from .instances import AutomorphismTwistInstance, ShiftTwistInstance

    kind = data.get("kind")
    if kind == "shift":
        twisted = ShiftTwistInstance(base, int(data.get("s", 2)))
        bijection = {pt.tag: pt.tag for pt in base.points}
    elif kind == "automorphism":
        sigma = dict(data["sigma"])
        try:
            twisted = AutomorphismTwistInstance(base, sigma)
        except ValueError as err:
            return (
                TransportReport(
                    description=f"automorphism({sigma})",
                    accepted=False,
                    reason=str(err),
                    unit_law=False,
                    monoidal_points=False,
                    point_count_match=False,
                    supports_match_expected=False,
                    expected_bijection={},
                ),
                None,
            )
        bijection = {v: sigma[v] for v in base.quiver.vertices}
    else:
        raise ValueError(f"unknown transport kind {kind!r}")

    rng = random.Random(2024)
    unit_law = True
    u = twisted.unit_complex()
    for _ in range(4):
        b = twisted.sample_object(rng, 1)
        t = twisted.tensor(u, b)
        for pt in twisted.points:
            if twisted.evaluate(pt, t) != twisted.evaluate(pt, b):
                unit_law = False
    monoidal = True
    from .instances import convolve_graded

    for _ in range(4):
        a = twisted.sample_object(rng, 1)
        b = twisted.sample_object(rng, 1)
        t = twisted.tensor(a, b)
        for pt in twisted.points:
            expected = convolve_graded(twisted.evaluate(pt, a), twisted.evaluate(pt, b))
            if twisted.evaluate(pt, t) != expected:
                monoidal = False
    count_ok = len(twisted.points) == len(base.points)
    supports_ok = True
    for i in range(_pool_size(base)):
        a = base.pool_complex(i)
        expected = frozenset(bijection[v] for v in base.support_of(a))
        if twisted.support_of(a) != expected:
            supports_ok = False
    report = TransportReport(
        description=twisted.description,
        accepted=True,
        reason="",
        unit_law=unit_law,
        monoidal_points=monoidal,
        point_count_match=count_ok,
        supports_match_expected=supports_ok,
        expected_bijection=bijection,
    )
    return report, twisted


# ---------------------------------------------------------------------------
# stalks


@dataclass
class StalkReport:
    point_tag: str
    exact: bool
    ring_repr: str | None
    is_local: bool | None
    maximal_ideal: list | None
    residue_matches: bool | None
    end_unit_dim: int | None
    roof_lower_bound_dim: int | None
    note: str

    def as_dict(self) -> dict:
        return {
            "point": self.point_tag,
            "exact": self.exact,
            "ring": self.ring_repr,
            "local": self.is_local,
            "maximal_ideal": self.maximal_ideal,
            "residue_matches": self.residue_matches,
            "end_unit_dim": self.end_unit_dim,
            "roof_lower_bound_dim": self.roof_lower_bound_dim,
            "note": self.note,
        }


def stalk(instance, point: SpectrumPoint) -> StalkReport:
    if instance.kind == "ring":
        prime = instance._by_tag[point.tag]
        local, _ = localize(instance.ring, prime)
        report = local_ring_check(local)
        local_primes = ring_primes(local)
        residue_ok = (
            len(local_primes) == 1 and local_primes[0].residue_field == point.residue_field
        )
        return StalkReport(
            point_tag=point.tag,
            exact=True,
            ring_repr=repr(local),
            is_local=report.is_local,
            maximal_ideal=[local.label(r) for r in (report.maximal_ideal or [])],
            residue_matches=residue_ok,
            end_unit_dim=None,
            roof_lower_bound_dim=None,
            note="closed-form localization",
        )
    if instance.kind in ("quiver", "quiver-transported"):
        base = instance.base if hasattr(instance, "base") else instance
        unit = base.unit_complex()
        kernel = point.kernel_classes() if instance.kind == "quiver" else frozenset()
        roofs = quotient_hom_bounded(unit, unit, kernel, base.calc)
        return StalkReport(
            point_tag=point.tag,
            exact=False,
            ring_repr=None,
            is_local=None,
            maximal_ideal=None,
            residue_matches=None,
            end_unit_dim=roofs.direct_dim,
            roof_lower_bound_dim=roofs.direct_dim,
            note="lower bound from bounded roof calculus; residue field is the ground field",
        )
    raise ValueError(f"no stalk computation for instance kind {instance.kind!r}")
