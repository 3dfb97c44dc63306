import random

import pytest

from ttspec.fields import PrimeField, Rationals
from ttspec.instances import (
    CorruptedTensorInstance,
    QuiverInstance,
    RingInstance,
    convolve_graded,
)
from ttspec.quivers import Quiver
from ttspec.rings import ZmodRing
from ttspec.spectra import (
    balmer_spectrum,
    comparison_map,
    enumerate_thick_tensor_ideals,
    gamma_ring_quotient,
    gamma_subquiver,
    ideal_of_open,
    localization_points,
    pool_pair_support_checks,
    stalk,
    transport_tensor,
    verify_support_data,
)

F2 = PrimeField(2)
A2 = QuiverInstance(Quiver.line(2), F2)
A1 = QuiverInstance(Quiver.line(1), F2)
Z12 = RingInstance(ZmodRing(12))
Z6 = RingInstance(ZmodRing(6))


def pool_idx(instance, label):
    return instance.pool_labels.index(label)


def test_point_counts():
    assert len(A2.points) == 2
    assert len(A1.points) == 1
    assert len(Z12.points) == 2


def test_unit_evaluates_to_ground_field():
    for inst in (A2, Z12):
        for pt in inst.points:
            assert pt.evaluate(inst.unit_complex()) == {0: 1}


def test_evaluate_examples():
    s1 = A2.pool_complex(pool_idx(A2, "[v1]"))
    v1, v2 = A2.points
    assert v1.evaluate(s1) == {0: 1}
    assert v2.evaluate(s1) == {}
    kos2 = Z12.pool_complex(pool_idx(Z12, "kos(2)"))
    at2, at3 = Z12.points
    assert at2.evaluate(kos2) != {}
    assert at3.evaluate(kos2) == {}


def test_evaluator_additive_and_multiplicative():
    rng = random.Random(3)
    for inst in (A2, Z12):
        for _ in range(6):
            a = inst.sample_object(rng, 1)
            b = inst.sample_object(rng, 1)
            for pt in inst.points:
                ea, eb = pt.evaluate(a), pt.evaluate(b)
                assert pt.evaluate(inst.sum(a, b)) == {
                    k: ea.get(k, 0) + eb.get(k, 0)
                    for k in set(ea) | set(eb)
                    if ea.get(k, 0) + eb.get(k, 0)
                }
                assert pt.evaluate(inst.tensor(a, b)) == convolve_graded(ea, eb)


def test_supports_and_opens():
    s1 = A2.pool_complex(pool_idx(A2, "[v1]"))
    assert A2.support_of(A2.unit_complex()) == {"v1", "v2"}
    assert A2.open_of(A2.unit_complex()) == frozenset()
    assert A2.support_of(s1) == {"v1"}
    assert A2.open_of(s1) == {"v2"}
    s2 = A2.pool_complex(pool_idx(A2, "[v2]"))
    assert A2.open_of(A2.sum(s1, s2)) == frozenset()


def test_support_axioms_pass_on_quiver_and_ring():
    for inst in (A2, Z12):
        report = verify_support_data(inst, samples=200, seed=7)
        assert report.passed, report.as_dict()


def test_support_axioms_catch_corrupted_tensor():
    bad = CorruptedTensorInstance(A2)
    report = verify_support_data(bad, samples=80, seed=11)
    assert not report.passed
    slot = report.results["tensor-intersection"]
    assert slot["failures"] > 0
    assert slot["witness"] is not None


def test_pool_pair_checks():
    for inst in (A2, Z12):
        checks = pool_pair_support_checks(inst)
        assert all(checks.values()), checks


def test_ideal_of_open_examples():
    all_points = frozenset(pt.tag for pt in A2.points)
    full = ideal_of_open(A2, all_points)
    assert full.members == frozenset()
    empty = ideal_of_open(A2, frozenset())
    assert empty.members == frozenset(range(3))
    at_v2 = ideal_of_open(A2, frozenset({"v2"}))
    assert at_v2.members == frozenset({pool_idx(A2, "[v1]")})
    assert at_v2.complete


def test_enumerate_ideals_counts():
    assert len(enumerate_thick_tensor_ideals(A1)) == 2
    assert len(enumerate_thick_tensor_ideals(A2)) == 4
    a3 = QuiverInstance(Quiver.line(3), F2)
    assert len(enumerate_thick_tensor_ideals(a3)) == 8
    alt = QuiverInstance(Quiver.line(3, "rl"), F2)
    assert len(enumerate_thick_tensor_ideals(alt)) == 8
    assert len(enumerate_thick_tensor_ideals(Z12)) == 4


def test_ideals_are_support_subsets():
    for inst in (A2, Z12):
        supports = [inst.support_of(inst.pool_complex(i)) for i in range(len(inst.pool_labels))]
        for ideal in enumerate_thick_tensor_ideals(inst):
            expected = frozenset(
                i for i, s in enumerate(supports) if s <= ideal.support_set
            )
            assert ideal.members == expected


def test_balmer_primes():
    data = balmer_spectrum(A2)
    assert len(data.primes) == 2
    assert data.lattice_closed
    kernels = {tuple(sorted(pt.kernel_classes())) for pt in A2.points}
    assert {p.key() for p in data.primes} == kernels
    ring_data = balmer_spectrum(Z6)
    assert len(ring_data.primes) == 2


def test_comparison_map_bijective_on_quiver_and_ring():
    for inst in (A2, Z12, Z6):
        report = comparison_map(inst)
        assert report.injective
        assert report.surjective
        assert report.continuous
        assert report.open_map


def test_localization_points():
    for inst in (A2, QuiverInstance(Quiver.line(3), F2)):
        report = localization_points(inst)
        assert report.passed, report.as_dict()
    # spec-level examples on A2
    rep = localization_points(A2).per_object
    assert rep["unit" if "unit" in rep else "[v1..v2]"]["quotient_points"] == []
    assert rep["[v1]"]["quotient_points"] == ["v2"]


def test_gamma_subquiver_a1_in_a2():
    report, small = gamma_subquiver(A2, ["v1"])
    assert report.accepted
    assert report.passed, report.as_dict()
    assert report.point_map == {"v1": "v1"}
    assert report.pullback_consistent


def test_gamma_ring_quotient_z12_to_z3():
    small = RingInstance(ZmodRing(3))
    report = gamma_ring_quotient(Z12, small)
    assert report.accepted
    assert report.passed, report.as_dict()
    assert report.point_map == {"(3)": "(3)"}


def test_gamma_rejects_non_tensor_functor():
    from ttspec.spectra import gamma_for_functor

    small = QuiverInstance(Quiver.line(1), F2)

    def shifted_restriction(c):
        from ttspec.complexes import shift_complex
        from ttspec.spectra import restrict_complex_to_subquiver

        return shift_complex(restrict_complex_to_subquiver(A2, small, c), 1)

    report = gamma_for_functor(A2, small, shifted_restriction, {"v1": "v1"})
    assert not report.accepted
    assert "unit" in report.reason


def test_gamma_identity():
    from ttspec.spectra import gamma_for_functor

    report = gamma_for_functor(A2, A2, lambda c: c, {"v1": "v1", "v2": "v2"})
    assert report.passed


def test_transport_shift_twist():
    report, twisted = transport_tensor(A2, {"kind": "shift", "s": 2})
    assert report.passed, report.as_dict()
    assert report.expected_bijection == {"v1": "v1", "v2": "v2"}
    # the twisted unit is the shifted unit object
    u = twisted.unit_complex()
    assert u.degrees() == [-2]


def test_transport_swap_automorphism():
    two_points = QuiverInstance(Quiver(["v1", "v2"], []), F2)
    report, twisted = transport_tensor(
        two_points, {"kind": "automorphism", "sigma": {"v1": "v2", "v2": "v1"}}
    )
    assert report.passed, report.as_dict()
    assert report.expected_bijection == {"v1": "v2", "v2": "v1"}
    s1 = two_points.pool_complex(0)
    assert two_points.support_of(s1) != twisted.support_of(s1)


def test_transport_rejects_non_automorphism():
    report, twisted = transport_tensor(
        A2, {"kind": "automorphism", "sigma": {"v1": "v2", "v2": "v1"}}
    )
    # swapping the vertices of v1 -> v2 reverses the arrow: not an automorphism
    assert not report.accepted
    assert twisted is None


def test_transport_identity_automorphism():
    report, twisted = transport_tensor(
        A2, {"kind": "automorphism", "sigma": {"v1": "v1", "v2": "v2"}}
    )
    assert report.passed
    for i in range(len(A2.pool_labels)):
        assert twisted.support_of(A2.pool_complex(i)) == A2.support_of(A2.pool_complex(i))


def test_stalks_on_z12():
    reports = {pt.tag: stalk(Z12, pt) for pt in Z12.points}
    assert reports["(2)"].ring_repr == "Z/4"
    assert reports["(2)"].is_local
    assert reports["(2)"].maximal_ideal == ["0", "2"]
    assert reports["(2)"].residue_matches
    assert reports["(3)"].ring_repr == "Z/3"
    assert reports["(3)"].is_local


def test_stalk_on_dual_numbers():
    from ttspec.rings import PolyQuotientRing

    inst = RingInstance(PolyQuotientRing(F2, [0, 0, 1]))
    report = stalk(inst, inst.points[0])
    assert report.is_local
    assert report.exact


def test_stalk_on_quiver_is_lower_bound():
    report = stalk(A2, A2.points[0])
    assert not report.exact
    assert report.end_unit_dim == 1
    assert report.roof_lower_bound_dim == 1


def test_point_kernels_distinct():
    for inst in (A2, Z12, QuiverInstance(Quiver.line(3), F2)):
        kernels = [pt.kernel_classes() for pt in inst.points]
        assert len(set(kernels)) == len(kernels)


def test_quiver_instance_over_rationals():
    qa2 = QuiverInstance(Quiver.line(2), Rationals())
    assert len(qa2.points) == 2
    kernels = [pt.kernel_classes() for pt in qa2.points]
    assert len(set(kernels)) == len(kernels)
    report = verify_support_data(qa2, samples=60, seed=3)
    assert report.passed
