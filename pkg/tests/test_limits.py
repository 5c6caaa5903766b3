import pytest

from deformedw.context import ScalarCtx
from deformedw.exact import Cyc, rat
from deformedw.fock import HighestWeight, hw_eigenvalue_w
from deformedw.limits import (check_f_reduces_to_g, hbar_expand_f,
                              verify_correlator_order,
                              verify_limit_I_appendix,
                              verify_limit_II_relation)
from deformedw.zeta import p_binomial


def test_limit2_context_basics():
    ctx = ScalarCtx.limit2(3, 2, trunc=5)
    # p at hbar = 0 equals omega, exactly
    assert ctx.p.coefficient(0) == ctx.omega_pow(1)
    assert ctx.s * ctx.s == ctx.p
    # the prefactor is hbar + O(hbar^2)
    pref = -ctx.prefactor()
    assert not pref.coefficient(0)
    assert pref.coefficient(1) == 1


def test_f_expansion_well_defined_at_divisible_orders():
    # the n = 0 mod N exponent terms need the cancellation analysis; the
    # series division performs and validates it
    ctx = ScalarCtx.limit2(2, 2, trunc=5)
    win = hbar_expand_f(ctx, 1, 1, 6)
    for ell in range(7):
        win.coefficient((ell,))  # no error


def test_f_reduces_to_g():
    for (N, k) in ((2, 2), (2, 3), (3, 1), (3, 2)):
        ctx = ScalarCtx.limit2(N, k, trunc=4)
        for i in range(1, N):
            for j in range(1, N):
                ok, msg = check_f_reduces_to_g(ctx, i, j, 8)
                assert ok, (N, k, i, j, msg)


def test_f_expansion_N2_k2_coefficients():
    # hbar^0 coefficients (1, -2, 2, -2, ...) for N=2, k=2
    ctx = ScalarCtx.limit2(2, 2, trunc=4)
    win = hbar_expand_f(ctx, 1, 1, 6)
    expect = [1, -2, 2, -2, 2, -2, 2]
    for ell in range(7):
        c = win.coefficient((ell,)).coefficient(0)
        assert c == expect[ell]


def test_limit_II_relation_central_and_generic():
    ctx = ScalarCtx.limit2(2, 2, trunc=4)
    rec = verify_limit_II_relation(ctx, 1, 1, order_x=6)
    assert rec.ok, rec.detail
    ctx = ScalarCtx.limit2(3, 1, trunc=4)
    for (i, j) in ((1, 1), (1, 2), (2, 2)):
        rec = verify_limit_II_relation(ctx, i, j, order_x=5)
        assert rec.ok, rec.detail


def test_limit_II_rejects_bad_flavor():
    ctx = ScalarCtx.limit2(2, 2, trunc=4)
    with pytest.raises(ValueError):
        verify_limit_II_relation(ctx, 0, 1)


def test_single_current_vacuum_value_is_order_hbar():
    # <vac|W^1|vac> = [N]_p vanishes at hbar = 0 in the limit II context
    for (N, k) in ((2, 2), (3, 1)):
        ctx = ScalarCtx.limit2(N, k, trunc=4)
        val = hw_eigenvalue_w(ctx, HighestWeight.vacuum(ctx), 1)
        assert not val.coefficient(0)


def test_correlator_order_small():
    for (N, k) in ((2, 2), (3, 2)):
        for n in (1, 2, 3):
            ctx = ScalarCtx.limit2(N, k, trunc=n + 1)
            rec = verify_correlator_order(ctx, n, order_x=6)
            assert rec.ok, rec.detail
            assert "vacuum lambda" in rec.assumptions


def test_limit1_p_binomial_even():
    # [N choose i]_p = binom + O(hbar^2), even in hbar
    from math import comb
    for N in (2, 3):
        for i in range(N + 1):
            for beta in (rat(N + 1, N), rat(N, N + 1)):
                ctx = ScalarCtx.limit1(N, beta, trunc=7)
                pb = p_binomial(ctx, N, i)
                assert pb.coefficient(0) == comb(N, i)
                assert not pb.coefficient(1)
                assert not pb.coefficient(3)
                assert not pb.coefficient(5)


def test_limit1_N2_value():
    # [2]_p = 2 cosh(hbar/4) at beta = 3/2: coefficient of hbar^2 is 1/16
    ctx = ScalarCtx.limit1(2, rat(3, 2), trunc=6)
    pb = p_binomial(ctx, 2, 1)
    assert pb.coefficient(2) == rat(1, 16)


def test_limit1_appendix():
    rec = verify_limit_I_appendix(2, rat(3, 2), 1, window=2)
    assert rec.ok, rec.detail
    rec = verify_limit_I_appendix(3, rat(3, 4), 2, window=1)
    assert rec.ok, rec.detail
