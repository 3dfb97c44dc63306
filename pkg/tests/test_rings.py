import random

import pytest

from ttspec.complexes import BoundedComplex, stalk_complex, derived_tensor, shift_complex
from ttspec.fields import GaloisField, PrimeField
from ttspec.rings import (
    FieldRing,
    FreeCat,
    PolyQuotientRing,
    ProductRing,
    RingMatrix,
    ZmodRing,
    factor_integer,
    factor_monic_poly,
    fiber,
    is_acyclic_over_ring,
    local_ring_check,
    localize,
    parse_ring,
    primes,
    structure_sheaf,
    support,
    two_term_complex,
    zmod_complex_homology,
)

Z12 = ZmodRing(12)
Z4 = ZmodRing(4)
Z6 = ZmodRing(6)
F2 = PrimeField(2)
DUAL = PolyQuotientRing(F2, [0, 0, 1])  # F_2[x]/(x^2)
F2xF3 = ProductRing([FieldRing(PrimeField(2)), FieldRing(PrimeField(3))])


def test_factor_integer():
    assert factor_integer(12) == [(2, 2), (3, 1)]
    assert factor_integer(7) == [(7, 1)]
    with pytest.raises(ValueError):
        factor_integer(1)


def test_factor_monic_poly():
    assert factor_monic_poly(F2, (0, 0, 1)) == [((0, 1), 2)]  # x^2 = x * x
    assert factor_monic_poly(F2, (1, 1, 1)) == [((1, 1, 1), 1)]  # irreducible
    assert factor_monic_poly(F2, (1, 0, 1)) == [((1, 1), 2)]  # (x+1)^2 over F_2


def test_primes_of_z12():
    pts = primes(Z12)
    assert [pt.label for pt in pts] == ["(2)", "(3)"]
    assert pts[0].residue_field == PrimeField(2)
    assert pts[1].residue_field == PrimeField(3)


def test_primes_of_a_field():
    pts = primes(FieldRing(F2))
    assert len(pts) == 1
    assert pts[0].label == "(0)"


def test_primes_of_dual_numbers():
    pts = primes(DUAL)
    assert len(pts) == 1
    assert pts[0].label == "(x)"
    assert pts[0].residue_field == F2
    # reduction kills x
    assert pts[0].reduce((0, 1)) == 0
    assert pts[0].reduce((1, 1)) == 1


def test_primes_of_product():
    pts = primes(F2xF3)
    assert [pt.label for pt in pts] == ["0:(0)", "1:(0)"]


def test_extension_residue_field():
    ring = PolyQuotientRing(F2, [1, 1, 1])  # F_2[x]/(x^2+x+1) = GF(4)
    pts = primes(ring)
    assert len(pts) == 1
    assert isinstance(pts[0].residue_field, GaloisField)
    assert pts[0].residue_field.e == 2


def test_localize_z12():
    pts = primes(Z12)
    at2, map2 = localize(Z12, pts[0])
    at3, map3 = localize(Z12, pts[1])
    assert at2 == ZmodRing(4)
    assert at3 == ZmodRing(3)
    assert map2(7) == 3
    assert map3(7) == 1


def test_localize_local_ring_is_identity():
    pts = primes(DUAL)
    local, to_local = localize(DUAL, pts[0])
    assert local == DUAL
    assert to_local((1, 1)) == (1, 1)


def test_structure_sheaf_empty_is_zero_ring():
    data = structure_sheaf(Z12, [])
    assert data.ring.size() == 1


def test_structure_sheaf_single_prime():
    pts = primes(Z12)
    data = structure_sheaf(Z12, [pts[0]])
    assert data.ring.factors == [ZmodRing(4)]


def test_structure_sheaf_global_sections_reconstruct_ring():
    for ring in (Z12, Z4, Z6, DUAL, F2xF3):
        data = structure_sheaf(ring, primes(ring))
        assert data.is_global_iso is True
        assert data.ring.size() == ring.size()


def test_local_ring_check_z4():
    report = local_ring_check(Z4)
    assert report.is_local
    assert report.maximal_ideal == [0, 2]


def test_local_ring_check_z6_fails():
    report = local_ring_check(Z6)
    assert not report.is_local
    assert report.witness is not None


def test_local_ring_check_fields_and_dual():
    assert local_ring_check(FieldRing(F2)).maximal_ideal == [F2.zero]
    report = local_ring_check(DUAL)
    assert report.is_local
    assert set(report.maximal_ideal) == {(0, 0), (0, 1)}


def test_fiber_of_unit_is_nonzero_everywhere():
    cat = FreeCat(Z12)
    unit = stalk_complex(cat, 1)
    for pt in primes(Z12):
        assert fiber(unit, pt).cohomology_dims() == {0: 1}


def test_fiber_of_multiplication_by_two_mod_twelve():
    cat = FreeCat(Z12)
    c = two_term_complex(cat, 2)
    pts = primes(Z12)
    at2 = fiber(c, pts[0]).cohomology_dims()
    at3 = fiber(c, pts[1]).cohomology_dims()
    assert at2 == {0: 1, 1: 1}  # multiplication by 2 dies mod 2
    assert at3 == {}  # invertible mod 3


def test_support_examples():
    cat = FreeCat(Z12)
    assert [pt.label for pt in support(stalk_complex(cat, 1))] == ["(2)", "(3)"]
    assert support(BoundedComplex(cat, {}, {})) == []
    assert [pt.label for pt in support(two_term_complex(cat, 2))] == ["(2)"]


def test_zmod_homology_of_two_complex():
    cat = FreeCat(Z12)
    c = two_term_complex(cat, 2)
    h = zmod_complex_homology(c)
    assert h == {0: [2], 1: [2]}


def test_empty_support_iff_acyclic_over_ring():
    rng = random.Random(7)
    for ring in (Z12, Z4, DUAL, F2xF3):
        cat = FreeCat(ring)
        pts = primes(ring)
        elements = ring.elements()
        for _ in range(40):
            a = rng.randint(0, 2)
            b = rng.randint(0, 2)
            m = RingMatrix(ring, b, a, [rng.choice(elements) for _ in range(a * b)])
            try:
                c = BoundedComplex(cat, {0: a, 1: b}, {0: m})
            except ValueError:
                continue
            assert (support(c, pts) == []) == is_acyclic_over_ring(c)


def test_tensor_supports_intersect():
    cat = FreeCat(Z12)
    k2 = two_term_complex(cat, 2)  # support (2): 2 kills mod 2, invertible mod 3
    k3 = two_term_complex(cat, 3)  # support (3)
    both = derived_tensor(k2, k3)
    assert support(both) == []
    squared = derived_tensor(k2, shift_complex(k2, 1))
    assert [pt.label for pt in support(squared)] == ["(2)"]


def test_parse_ring_literals():
    assert parse_ring({"kind": "zmod", "n": 12}) == Z12
    assert parse_ring({"kind": "polyquot", "p": 2, "f": [0, 0, 1]}) == DUAL
    assert parse_ring(
        {"kind": "product", "factors": [{"kind": "field", "p": 2}, {"kind": "field", "p": 3}]}
    ) == F2xF3
