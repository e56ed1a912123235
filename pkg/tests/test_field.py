from fractions import Fraction

import mpmath
import pytest
from hypothesis import given

from hirzebruch.field import (MU, ConductorMismatch, CycloNum, PrecisionExhausted, Sign,
                              cyclo_add, cyclo_conj, cyclo_inverse, cyclo_mul, cyclo_neg,
                              embed, rational, real_sign, zeta)

from .conftest import cyclo, nonzero_cyclo

Z = zeta(1)


def test_root_of_unity_relations():
    assert Z * zeta(4) == 1
    assert sum((zeta(k) for k in range(5)), CycloNum.rational(0)).is_zero()
    assert MU * MU.conj() == 1
    assert MU == zeta(3)


def test_conjugation_examples():
    assert cyclo_conj(Z) == CycloNum([-1, -1, -1, -1])
    assert cyclo_conj(rational(Fraction(3, 7))) == Fraction(3, 7)


def test_inverse_examples():
    assert cyclo_inverse(Z) == zeta(4)
    assert cyclo_inverse(rational(2)) == Fraction(1, 2)
    one_plus = 1 + Z
    assert cyclo_inverse(one_plus) * one_plus == 1
    with pytest.raises(ZeroDivisionError):
        cyclo_inverse(rational(0))


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        cyclo_add(zeta(1, 5), zeta(1, 7))
    with pytest.raises(ValueError):
        CycloNum([1, 2, 3], conductor=6)


def test_coefficient_length_enforced():
    with pytest.raises(ValueError):
        CycloNum([1, 2, 3])


def test_json_roundtrip():
    a = CycloNum([Fraction(1, 3), -2, 0, Fraction(5, 4)])
    d = a.to_json()
    assert d == {"conductor": 5, "coeffs": ["1/3", "-2", "0", "5/4"]}
    assert CycloNum.from_json(d) == a


def test_embed_golden_ratio():
    # independent evaluation of 2 cos(4 pi / 5) at 120 digits
    with mpmath.workdps(120):
        ref = 2 * mpmath.cos(4 * mpmath.pi / 5)
        e = embed(zeta(3) + zeta(2), 300)
        assert abs(e.value.real - ref) <= e.radius + mpmath.mpf(10) ** -80
    assert mpmath.nstr(ref, 11) == "-1.6180339887"


def test_embed_trivial():
    assert embed(rational(0)).value == 0
    assert embed(rational(0)).radius == 0
    assert embed(rational(Fraction(1, 2))).value == mpmath.mpf("0.5")


def test_real_sign_examples():
    assert real_sign(rational(0)) is Sign.ZERO
    assert real_sign(-(MU + MU.conj()).inverse()) is Sign.POSITIVE
    assert real_sign(MU + MU.conj()) is Sign.NEGATIVE
    with pytest.raises(ValueError):
        real_sign(Z)


def test_real_sign_tiny_gap_needs_refinement():
    # golden ratio approximation: phi - 987/610 is about 3.0e-7 with 2 cos(pi/5) = phi
    phi = -(zeta(2) + zeta(3))
    assert real_sign(phi - Fraction(987, 610)) is Sign.POSITIVE
    assert real_sign(phi - Fraction(1597, 987)) is Sign.NEGATIVE
    with pytest.raises(PrecisionExhausted):
        real_sign(phi - Fraction(165580141, 102334155), max_precision=32, start_precision=16)


@given(cyclo, cyclo, cyclo)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert cyclo_add(a, cyclo_neg(a)).is_zero()
    assert cyclo_mul(a, b) == cyclo_mul(b, a)


@given(cyclo, cyclo)
def test_conj_is_ring_automorphism(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


@given(nonzero_cyclo)
def test_inverse_property(a):
    assert a * cyclo_inverse(a) == 1


@given(cyclo, cyclo)
def test_embed_respects_multiplication(a, b):
    ea, eb, eab = embed(a, 80), embed(b, 80), embed(a * b, 80)
    bound = (eab.radius + abs(ea.value) * eb.radius + abs(eb.value) * ea.radius
             + ea.radius * eb.radius + mpmath.mpf(2) ** -60)
    assert abs(eab.value - ea.value * eb.value) <= bound


@given(cyclo)
def test_real_part_sign_matches_float(a):
    r = (a + a.conj()) * Fraction(1, 2)
    s = real_sign(r)
    v = float(embed(r, 64).value.real)
    if abs(v) > 1e-9:
        assert (s is Sign.POSITIVE) == (v > 0)
