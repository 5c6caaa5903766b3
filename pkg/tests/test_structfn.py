import pytest

from deformedw.context import DEFAULT_GENERIC_POINTS, ScalarCtx
from deformedw.exact import Cyc, rat
from deformedw.series import series_log
from deformedw.structfn import (GammaFactors, NonRationalKernel, PoleError,
                                check_f_identities, contraction_logkernel,
                                f_logkernel, f_point_regular, f_series,
                                g_series, gamma_at, gamma_ladder)


def ctx_n(N, point=0):
    q, t = DEFAULT_GENERIC_POINTS[point]
    return ScalarCtx.generic(N, q, t)


def test_f_constant_term_is_one():
    for N in (2, 3, 4):
        ctx = ctx_n(N)
        for i in range(-1, N + 2):
            for j in range(-1, N + 2):
                assert f_series(ctx, i, j, 3).coefficient((0,)) == 1


def test_f11_first_coefficient_N2():
    ctx = ctx_n(2)
    q, t, p = ctx.q, ctx.t, ctx.p
    expect = (1 - q) * (1 - 1 / t) / (1 + p)
    assert f_series(ctx, 1, 1, 2).coefficient((1,)) == expect


def test_f12_first_coefficient_N3():
    ctx = ctx_n(3)
    q, t, p = ctx.q, ctx.t, ctx.p
    expect = (1 - q) * (1 - 1 / t) * ctx.s_pow(1) * (1 - p) / (1 - p ** 3)
    assert f_series(ctx, 1, 2, 2).coefficient((1,)) == expect


def test_f_index_reflection_symmetry():
    # f^{i,j} = f^{N-j,N-i} for 1 <= i <= j <= N-1
    for N in (3, 4):
        ctx = ctx_n(N)
        for i in range(1, N):
            for j in range(i, N):
                a = f_series(ctx, i, j, 8)
                b = f_series(ctx, N - j, N - i, 8)
                assert all(a.coefficient((l,)) == b.coefficient((l,))
                           for l in range(9))


def test_gamma_paper_value():
    ctx = ctx_n(3)
    q, t, p = ctx.q, ctx.t, ctx.p
    expect = (1 - q * p) * (1 - p / t) / ((1 - p) * (1 - p ** 2))
    assert gamma_at(ctx, 3) == expect


def test_gamma_pole():
    ctx = ctx_n(2)
    with pytest.raises(PoleError):
        gamma_at(ctx, 1)
    with pytest.raises(PoleError):
        gamma_at(ctx, -1)


def test_gamma_functional_identity():
    # gamma(p^{1/2} w) * (1-w)(1-pw) = (1-qw)(1-t^{-1}w) at random rational w
    ctx = ctx_n(3)
    q, t, p = ctx.q, ctx.t, ctx.p
    for a in (3, 5, -3, 7):
        w = ctx.s_pow(a - 1)
        assert gamma_at(ctx, a) * (1 - w) * (1 - p * w) == \
            (1 - q * w) * (1 - w / t)


def test_gamma_ladder():
    ctx = ctx_n(4)
    assert gamma_ladder(ctx, 1) == 1
    assert gamma_ladder(ctx, 3) == gamma_at(ctx, 3) * gamma_at(ctx, 5)


def test_g_series_N2_k2():
    win = g_series(2, 2, 1, 1, 6)
    expect = [1, -2, 2, -2, 2, -2, 2]
    for n in range(7):
        assert win.coefficient((n,)) == expect[n]


def test_g_series_binomial_oracle():
    # N=2: g^{1,1} = ((1-z)/(1+z))^{2/k}; oracle via exp of the closed-form log
    from deformedw.series import LaurentWindow, VarBound, series_exp
    for k in (1, 2, 3):
        win = g_series(2, k, 1, 1, 8)
        terms = {}
        for n in range(1, 9):
            if n % 2 == 1:
                terms[(n,)] = rat(-4, k * n)
        oracle = series_exp(LaurentWindow(("zeta",), terms,
                                          [VarBound(0, 8, True, False)]))
        for n in range(9):
            assert win.coefficient((n,)) == oracle.coefficient((n,))


def test_g_series_log_linear_in_inverse_k():
    # coefficients of log g scale exactly by k'/k between two levels
    for N, mu, nu in ((3, 1, 2), (4, 2, 3)):
        w1 = series_log(g_series(N, 1, mu, nu, 8))
        w3 = series_log(g_series(N, 3, mu, nu, 8))
        for n in range(1, 9):
            assert w1.coefficient((n,)) == 3 * w3.coefficient((n,))


def test_g_series_requires_nonzero_level():
    with pytest.raises(ValueError):
        g_series(2, 0, 1, 1, 4)


def test_resummation_dressed_kernels():
    # f^{1,1} * C_11 = 1 and f^{1,1} * C_12 = gamma(p^{1/2} x) for any N
    for N in (2, 3):
        ctx = ctx_n(N)
        lk = f_logkernel(N, 1, 1) + contraction_logkernel(N, 1, 1)
        gf = lk.resum(N)
        assert gf.factors == {}
        lk2 = f_logkernel(N, 1, 1) + contraction_logkernel(N, 1, 2)
        gf2 = lk2.resum(N)
        assert gf2.value(ctx, 4) == gamma_at(ctx, 5)  # gamma(p^{1/2} s^4)


def test_resummation_rejects_bare_kernel():
    with pytest.raises(NonRationalKernel):
        contraction_logkernel(3, 1, 2).resum(3)


def test_logkernel_series_matches_f_series():
    ctx = ctx_n(3)
    lk = f_logkernel(3, 2, 2)
    win = lk.series(ctx, "x", 6)
    ref = f_series(ctx, 2, 2, 6)
    assert all(win.coefficient((n,)) == ref.coefficient((n,)) for n in range(7))


def test_f_point_regularity():
    # the extreme delta-term scalars stay regular
    for N in (2, 3, 4):
        for i in range(0, N + 1):
            for j in range(i, N + 1):
                for k in range(1, i + 1):
                    if j + k > N:
                        continue
                    for e in (j - i, i - j):
                        assert f_point_regular(N, i - k, j + k, e)
    # a pole shows up when the argument hits the gamma singularity
    assert not f_point_regular(3, 1, 1, -2)


@pytest.mark.parametrize("N", [2, 3, 4])
@pytest.mark.parametrize("point", [0, 1])
def test_check_f_identities(N, point):
    ctx = ctx_n(N, point)
    order = 12 if N < 4 else 10
    results = check_f_identities(ctx, N, order)
    bad = [r for r in results if not r[1]]
    assert not bad, bad[:3]
