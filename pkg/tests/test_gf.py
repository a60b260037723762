"""Finite field arithmetic round-trips and subfield detection."""

from __future__ import annotations

import pytest

from factorsmith.gf import FiniteField, default_modulus, parse_modulus


def test_default_moduli():
    assert default_modulus(2, 2) == (1, 1, 1)        # x^2+x+1
    assert default_modulus(2, 3) == (1, 1, 0, 1)     # x^3+x+1
    assert default_modulus(2, 4) == (1, 1, 0, 0, 1)  # x^4+x+1


def test_gf16_y4_equals_1_plus_y():
    L = FiniteField(2, 4)
    y = L.generator
    assert L.power(y, 4) == L.add(1, y)


def test_parse_modulus():
    assert parse_modulus(2, 4, "y4=y+1") == (1, 1, 0, 0, 1)
    assert parse_modulus(2, 3, "y3=y+1") == (1, 1, 0, 1)
    with pytest.raises(ValueError):
        parse_modulus(2, 4, "y3=y+1")


def test_field_axioms_small():
    for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1)]:
        F = FiniteField(p, e)
        elems = list(F.elements())
        for a in elems:
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
        # spot check associativity/distributivity on a few triples
        probe = elems[: min(len(elems), 6)]
        for a in probe:
            for b in probe:
                for c in probe:
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_multiplicative_group_cyclic():
    F = FiniteField(2, 4)
    seen = set()
    x = 1
    for _ in range(F.order - 1):
        seen.add(x)
        x = F.mul(x, F.generator)
    assert len(seen) == 15  # y generates GF(16)^x


def test_subfields():
    L = FiniteField(2, 4)
    assert L.subfield_elements(1) == (0, 1)
    assert len(L.subfield_elements(2)) == 4
    with pytest.raises(ValueError):
        L.subfield_elements(3)
    # frobenius fixes exactly the prime field
    assert tuple(x for x in L.elements() if L.frobenius(x) == x) == (0, 1)


def test_element_from_poly():
    L = FiniteField(2, 4)
    y = L.generator
    assert L.element_from_poly("y") == y
    assert L.element_from_poly("1+y3") == L.add(1, L.power(y, 3))
    assert L.element_from_poly("1+y+y3") == L.add(L.add(1, y), L.power(y, 3))
    assert L.element_from_poly("0") == 0
