"""Exact cyclotomic arithmetic: ring laws, known identities, round trips."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lefschetz.cyclotomic import Cyc, parse_cyc
from lefschetz.errors import ValidationError


def approx(c: Cyc) -> complex:
    n, coeffs = c.to_root_coeffs()
    return sum(complex(q) * cmath.exp(2j * cmath.pi * k / n)
               for k, q in coeffs.items())


def E(n, k=1):
    return Cyc.root_of_unity(n, k)


def test_roots_of_unity_basics():
    assert E(1) == Cyc(1)
    assert E(2) == Cyc(-1)
    assert E(4) * E(4) == Cyc(-1)
    assert E(3) * E(3) * E(3) == Cyc(1)
    # full sum of n-th roots vanishes
    for n in (2, 3, 4, 5, 6, 7, 8, 9, 12):
        total = Cyc(0)
        for k in range(n):
            total = total + E(n, k)
        assert total.is_zero()


def test_conductor_minimization():
    assert E(6).conductor == 3  # E(6) = -E(3)^2 = 1 + E(3) in the power basis
    assert str(E(6)) == "1+E(3)"
    assert parse_cyc("-E(3)^2") == E(6)
    assert E(12, 4).conductor == 3
    assert (E(8) * E(8)).conductor == 4
    assert (E(5) + E(5, 4) + E(5, 2) + E(5, 3)).as_rational() == -1


def test_golden_ratio_and_sqrt_identities():
    # (E(5)+E(5)^4) satisfies x^2 + x - 1 = 0
    x = E(5) + E(5, 4)
    assert (x * x + x - Cyc(1)).is_zero()
    # Gauss sum: (E(7)+E(7)^2+E(7)^4) has minimal polynomial x^2+x+2
    y = E(7) + E(7, 2) + E(7, 4)
    assert (y * y + y + Cyc(2)).is_zero()
    # sqrt(-1), sqrt(2), sqrt(3) composites
    i = E(4)
    sqrt2 = E(8) + E(8, 7)
    sqrt3 = E(12) + E(12, 11)
    assert (i * i) == Cyc(-1)
    assert (sqrt2 * sqrt2) == Cyc(2)
    assert (sqrt3 * sqrt3) == Cyc(3)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
small_cycs = st.builds(
    lambda pairs: sum((Cyc.root_of_unity(n, k) * q for q, n, k in pairs), Cyc(0)),
    st.lists(st.tuples(rationals, st.sampled_from([1, 3, 4, 5, 8, 9, 12]),
                       st.integers(0, 11)), min_size=0, max_size=4))


@settings(max_examples=120, deadline=None)
@given(small_cycs, small_cycs, small_cycs)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + Cyc(0) == a
    assert a * Cyc(1) == a
    assert (a - a).is_zero()


@settings(max_examples=80, deadline=None)
@given(small_cycs)
def test_numeric_agreement(a):
    za = approx(a)
    assert abs(za - approx(a + Cyc(3) - Cyc(3))) < 1e-9
    b = a * a
    assert abs(approx(b) - za * za) < 1e-8


@settings(max_examples=80, deadline=None)
@given(small_cycs)
def test_conjugation_and_galois(a):
    assert abs(approx(a.conjugate()) - approx(a).conjugate()) < 1e-9
    n = a.conductor
    # any Galois image has the same minimal polynomial; sigma_1 = id
    assert a.galois(1) == a
    assert a.conjugate().conjugate() == a
    # galois orbit sum is rational
    assert a.galois_orbit_sum().is_rational()


def test_galois_requires_coprime():
    with pytest.raises(ValueError):
        E(9).galois(3)


def test_integrality():
    assert E(5).is_integral()
    assert (E(5) / 2).is_integral() is False
    assert (E(5) + Fraction(1, 2)).is_integral() is False
    # algebraic integer with non-obvious form: (E(5)+E(5)^4) is integral
    assert (E(5) + E(5, 4)).is_integral()


def test_rationality():
    assert Cyc(7).is_rational() and Cyc(7).as_rational() == 7
    assert not E(3).is_rational()
    with pytest.raises(ValueError):
        E(3).as_rational()
    assert (E(3) + E(3, 2)).as_rational() == -1


def test_string_round_trip():
    vals = [Cyc(0), Cyc(-3), Cyc(Fraction(2, 3)), E(7), E(7, 3) * 2 - E(7) / 3,
            E(8) + E(8, 7), E(9, 2) - Cyc(5), E(5) * Fraction(-7, 2)]
    for v in vals:
        assert parse_cyc(str(v)) == v


def test_parse_errors():
    for bad in ["", "E(0)", "2**E(3)", "E(3)E(5)", "foo", "3 4"]:
        with pytest.raises(ValidationError):
            parse_cyc(bad)


def test_parse_examples():
    assert parse_cyc("2*E(7)^3-E(7)+1/2") == E(7, 3) * 2 - E(7) + Fraction(1, 2)
    assert parse_cyc("-E(4)") == -E(4)
    assert parse_cyc("5") == Cyc(5)
    assert parse_cyc("-7/3") == Cyc(Fraction(-7, 3))


def test_division():
    assert (E(5) * 6) / 3 == E(5) * 2
    assert E(5) / Fraction(1, 2) == E(5) * 2
    with pytest.raises(ZeroDivisionError):
        E(5) / 0
    with pytest.raises(TypeError):
        E(5) / E(3)


def test_hashable_and_dict_keys():
    d = {E(3): 1, E(3, 2): 2, Cyc(1): 3}
    assert d[E(3)] == 1
    assert d[Cyc.root_of_unity(3, 2)] == 2
    # equal values hash equal across construction routes
    assert hash(E(6)) == hash(-E(3, 2))
