import random

import pytest

from deformedw.exact import (Cyc, HbarSeries, QuadExt, RAT, cyc_reduce,
                             cyclotomic_poly, rat)


def rand_rat(rng):
    return rat(rng.randint(-20, 20), rng.randint(1, 15))


def rand_cyc(rng, order):
    phi = len(cyclotomic_poly(order)) - 1
    return Cyc(order, [rand_rat(rng) for _ in range(phi)])


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)


def test_cyc_root_of_unity_orders():
    for N in (2, 3, 4, 5):
        order = 2 * N
        eta = Cyc.root(order)
        assert eta ** order == 1
        assert eta ** N == -1
        omega = eta * eta
        assert omega ** N == 1
        assert omega ** 1 != 1


def test_cyc_reduce_examples():
    # N=2 (order 4): eta^2 reduces to -1, i.e. omega = -1
    assert cyc_reduce(4, [0, 0, 1]) == -1
    assert cyc_reduce(4, [0, 0, 0, 0, 1]) == 1  # eta^4 = 1


def test_cyc_reduce_is_ring_hom():
    rng = random.Random(7)
    for order in (4, 6, 8, 10):
        phi = len(cyclotomic_poly(order)) - 1
        for _ in range(10):
            a = [rand_rat(rng) for _ in range(phi + 3)]
            b = [rand_rat(rng) for _ in range(phi + 2)]
            prod = [RAT(0)] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
            assert cyc_reduce(order, prod) == cyc_reduce(order, a) * cyc_reduce(order, b)


def test_field_axioms_cyc():
    rng = random.Random(3)
    for order in (4, 6, 8):
        for _ in range(8):
            a, b, c = (rand_cyc(rng, order) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if a:
                assert a * a.inverse() == 1
                assert (1 / a) * a == 1


def test_quadext_field():
    rng = random.Random(11)
    p = rat(9, 10)
    for _ in range(20):
        a = QuadExt(rand_rat(rng), rand_rat(rng), p)
        b = QuadExt(rand_rat(rng), rand_rat(rng), p)
        assert (a + b) * (a - b) == a * a - b * b
        if a:
            assert a * a.inverse() == 1
            assert a ** -2 == (a * a).inverse()
    s = QuadExt(0, 1, p)
    assert s * s == p
    assert s ** 2 == QuadExt(p, 0, p)
    assert (1 / s) * s == 1


def test_quadext_mixes_with_rationals():
    p = rat(9, 10)
    s = QuadExt(0, 1, p)
    assert 1 + s == QuadExt(1, 1, p)
    assert rat(1, 2) * s == QuadExt(0, rat(1, 2), p)
    assert (2 - s) * (2 + s) == 4 - p


def test_hbar_series_arithmetic():
    e = HbarSeries.exp_hbar(1, 8)
    em = HbarSeries.exp_hbar(-1, 8)
    assert e * em == 1
    assert e / e == 1
    assert (e - 1).valuation() == 1
    # precise truncation tracking: a product of two O(h) factors knows h^8
    prod = (e - 1) * (em - 1)
    assert prod.trunc == 9
    assert prod.coefficient(2) == -1


def test_hbar_exp_log_roundtrip():
    rng = random.Random(5)
    for _ in range(10):
        coeffs = [RAT(1)] + [rand_rat(rng) for _ in range(6)]
        f = HbarSeries(coeffs, 7)
        assert f.log().exp() == f
        g = HbarSeries([RAT(0)] + [rand_rat(rng) for _ in range(6)], 7)
        assert g.exp().log() == g


def test_hbar_division_with_valuation_cancellation():
    h = HbarSeries.hbar(8)
    e = HbarSeries.exp_hbar(1, 8)
    ratio = (e - 1) / h          # (e^h - 1)/h = 1 + h/2 + ...
    assert ratio.coefficient(0) == 1
    assert ratio.coefficient(1) == rat(1, 2)
    with pytest.raises(ValueError):
        (e - 0).shift(-1)


def test_hbar_cyc_coefficients():
    omega = Cyc.root(6).root_pow(2)
    f = HbarSeries.exp_hbar(rat(1, 3), 5) * omega
    g = f * f * f  # omega^3 = 1, exp(h)
    assert g == HbarSeries.exp_hbar(1, 5)
