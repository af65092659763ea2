from fractions import Fraction
from math import gcd

import pytest

from cablecalc.lens import conj_spinc, lens_d, lens_d_vector, selfconj_spinc


def test_base_cases():
    assert lens_d(1, 1, 0) == 0
    assert lens_d(1, 5, 0) == 0


def test_hand_values():
    assert lens_d(2, 1, 0) == Fraction(1, 4)
    assert lens_d(2, 1, 1) == Fraction(-1, 4)
    assert lens_d(3, 2, 1) == Fraction(1, 6)
    assert lens_d(3, 2, 2) == Fraction(-1, 2)
    assert lens_d(5, 3, 1) == 0


def test_q_reduced_mod_p():
    # label is kept while q is reduced
    assert lens_d(3, 5, 2) == lens_d(3, 2, 2) == Fraction(-1, 2)
    assert lens_d(2, 7, 1) == lens_d(2, 1, 1)


def test_integer_surgery_closed_form():
    # one recursion step gives d(L(p,1), i) = ((2i - p)^2 - p) / (4p)
    for p in range(1, 50):
        for i in range(p):
            expected = Fraction((2 * i - p) ** 2 - p, 4 * p)
            assert lens_d(p, 1, i) == expected


def test_validation_errors():
    with pytest.raises(ValueError):
        lens_d(4, 2, 0)
    with pytest.raises(ValueError):
        lens_d(0, 1, 0)
    with pytest.raises(ValueError):
        lens_d(3, 2, 3)
    with pytest.raises(ValueError):
        lens_d(3, 2, -1)
    with pytest.raises(ValueError):
        conj_spinc(3, 2, 5)


def test_conjugation_symmetry():
    for p in range(1, 13):
        for q in range(1, p + 5):
            if gcd(p, q) != 1:
                continue
            for i in range(p):
                j = conj_spinc(p, q, i)
                assert conj_spinc(p, q, j) == i
                assert lens_d(p, q, i) == lens_d(p, q, j)


def test_conj_examples():
    assert conj_spinc(3, 2, 1) == 0
    assert conj_spinc(2, 1, 0) == 0
    assert conj_spinc(2, 1, 1) == 1


def test_selfconj_matches_fixed_points():
    for p in range(1, 14):
        for q in range(1, 16):
            if gcd(p, q) != 1:
                continue
            fixed = sorted(i for i in range(p) if conj_spinc(p, q, i) == i)
            assert selfconj_spinc(p, q) == fixed


def test_selfconj_examples():
    assert selfconj_spinc(3, 5) == [2]
    assert selfconj_spinc(2, 1) == [0, 1]
    assert selfconj_spinc(3, 2) == [2]
    assert selfconj_spinc(1, 1) == [0]


def test_vector_shape():
    v = lens_d_vector(5, 2)
    assert len(v) == 5
    assert v[1] == lens_d(5, 2, 1)
