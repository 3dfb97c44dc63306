import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ttspec.fields import PrimeField
from ttspec.orbit import (
    OrbitObject,
    orbit_hom_dim,
    orbit_summary,
    random_orbit_object,
    tensor_exactness_spot_check,
    tensor_point_obstruction,
    unit_shift_periodicity,
    zero_ideal_prime,
)

F2 = PrimeField(2)


def test_orbit_hom_formula():
    unit = OrbitObject.unit(2)
    assert orbit_hom_dim(unit, unit) == 1
    assert orbit_hom_dim(OrbitObject.zero(2), unit) == 0
    # degree parity mismatch kills all homs
    assert orbit_hom_dim(unit, unit.shift(1)) == 0
    a = OrbitObject(2, (2, 1))
    b = OrbitObject(2, (1, 3))
    assert orbit_hom_dim(a, b) == 2 * 1 + 1 * 3


def test_unit_shift_periodicity():
    for m in (1, 2, 3, 5):
        witness = unit_shift_periodicity(m)
        assert witness.holds
    obj = OrbitObject(3, (0, 2, 1))
    assert obj.shift(3).dims == obj.dims


def test_obstruction_certificates():
    for m in (1, 2, 5):
        cert = tensor_point_obstruction(m)
        assert cert.empty_point_set
        claims = {s["claim"] for s in cert.steps}
        assert "unit-is-shift-periodic" in claims
        assert "target-unit-not-shift-periodic" in claims
    with pytest.raises(ValueError):
        tensor_point_obstruction(0)


def test_zero_ideal_prime_sampled():
    report = zero_ideal_prime(2, F2, samples=100, seed=7)
    assert report.samples == 100
    assert not report.zero_divisor_found
    assert report.zero_ideal_prime
    assert report.prime_count == 1


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(0, 10**6),
)
def test_tensor_total_dim_multiplies(m, seed):
    rng = random.Random(seed)
    a = random_orbit_object(m, rng)
    b = random_orbit_object(m, rng)
    t = a.tensor(b)
    assert t.total_dim() == a.total_dim() * b.total_dim()


def test_tensor_exactness_spot_check():
    for m in (1, 2, 3):
        assert tensor_exactness_spot_check(m, F2, samples=25, seed=3)


def test_orbit_summary_shape():
    summary = orbit_summary(2, F2, samples=50, seed=1)
    data = summary.as_dict()
    assert data["point_count"] == 0
    assert data["prime_count"] == 1
    assert data["comparison_surjective"] is False
    assert data["periodicity"]["unit_isomorphic_to_shift"]
    assert data["tensor_exactness_spot_check"]
