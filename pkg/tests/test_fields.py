from fractions import Fraction

import pytest

from ttspec.fields import GaloisField, PrimeField, Rationals, parse_field, poly_is_irreducible


def test_prime_field_arithmetic():
    f5 = PrimeField(5)
    assert f5.add(3, 4) == 2
    assert f5.mul(3, 4) == 2
    assert f5.inv(2) == 3
    assert f5.sub(1, 3) == 3
    assert f5.characteristic == 5


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_rationals_are_exact():
    q = Rationals()
    third = q.inv(q.from_int(3))
    assert third * 3 == 1
    assert q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert q.characteristic == 0


def test_gf4_table():
    # GF(4) with modulus x^2 + x + 1: x * (x + 1) = x^2 + x = 1
    f4 = GaloisField(2, 2)
    assert f4.modulus == (1, 1, 1)
    x = (0, 1)
    assert f4.mul(x, f4.add(x, f4.one)) == f4.one
    assert f4.inv(x) == f4.add(x, f4.one)
    assert len(f4.elements()) == 4


def test_gf_frobenius_fixes_everything_at_q():
    f4 = GaloisField(2, 2)
    for a in f4.elements():
        a4 = f4.mul(f4.mul(a, a), f4.mul(a, a))
        assert a4 == a


def test_embed_prime_into_extension():
    f4 = GaloisField(2, 2)
    assert f4.embed(0) == f4.zero
    assert f4.embed(1) == f4.one


def test_irreducibility_check():
    f2 = PrimeField(2)
    assert poly_is_irreducible(f2, (1, 1, 1))  # x^2+x+1
    assert not poly_is_irreducible(f2, (0, 0, 1))  # x^2
    assert not poly_is_irreducible(f2, (1, 0, 1))  # x^2+1 = (x+1)^2


def test_parse_field_literals():
    assert parse_field("f2") == PrimeField(2)
    assert parse_field("q") == Rationals()
    assert parse_field("f4") == GaloisField(2, 2)
    assert parse_field({"kind": "prime-field", "p": 3}) == PrimeField(3)
    with pytest.raises(ValueError):
        parse_field("f6")
