import pytest

from deformedw.context import DEFAULT_GENERIC_POINTS, ScalarCtx
from deformedw.fock import HighestWeight, hw_eigenvalue_w, kernel_coeffs, \
    zero_mode
from deformedw.structfn import gamma_at
from deformedw.wcurrents import (WInsertion, composite_no_mode, current_block,
                                 mode_engine, mode_profile, pinned_block,
                                 pinned_mode_value,
                                 single_current_mode_value,
                                 two_current_mode_table, w_correlator,
                                 w_mode_matrix_element)


def ctx_n(N, point=0):
    q, t = DEFAULT_GENERIC_POINTS[point]
    return ScalarCtx.generic(N, q, t)


def test_w_correlator_w0_is_transparent():
    ctx = ctx_n(2)
    hw = HighestWeight.vacuum(ctx)
    both = w_correlator(ctx, hw, [WInsertion(0, "z1"), WInsertion(1, "z2")], [4])
    single = w_correlator(ctx, hw, [WInsertion(1, "z2")], [])
    assert both.coefficient((0,)) == single.coefficient(())
    for ell in range(1, 5):
        assert not both.coefficient((ell,))


def test_w_correlator_out_of_range_rank_vanishes():
    ctx = ctx_n(2)
    hw = HighestWeight.vacuum(ctx)
    win = w_correlator(ctx, hw, [WInsertion(3, "z1"), WInsertion(1, "z2")], [2])
    assert all(not c for c in win.coeffs.values())


def test_w_correlator_single_equals_eigenvalue():
    for N in (2, 3):
        ctx = ctx_n(N)
        for hw in (HighestWeight.vacuum(ctx), HighestWeight.generic(ctx)):
            for i in range(N + 1):
                win = w_correlator(ctx, hw, [WInsertion(i, "z")], [])
                assert win.coefficient(()) == hw_eigenvalue_w(ctx, hw, i)


def test_w_correlator_two_point_N2_expansion():
    # sum over flavor pairs of zero modes times kernels, by hand
    ctx = ctx_n(2)
    hw = HighestWeight.vacuum(ctx)
    win = w_correlator(ctx, hw, [WInsertion(1, "z1"), WInsertion(1, "z2")], [5])
    for ell in range(6):
        acc = ctx.zero
        for f1 in (1, 2):
            for f2 in (1, 2):
                zm = zero_mode(ctx, hw, f1) * zero_mode(ctx, hw, f2)
                acc = acc + zm * kernel_coeffs(ctx, f1, f2, 0, 5)[ell]
        assert win.coefficient((ell,)) == acc


def test_mode_engine_matches_w_correlator():
    # dual route: target-pattern enumeration vs literal subset expansion
    for N in (2, 3):
        ctx = ctx_n(N)
        hw = HighestWeight.generic(ctx)
        for (i, j) in ((1, 1), (1, 2), (2, 2)):
            win = w_correlator(ctx, hw,
                               [WInsertion(i, "z1", 1), WInsertion(j, "z2", -1)],
                               [5])
            blocks = [current_block(ctx, hw, WInsertion(i, "z1", 1)),
                      current_block(ctx, hw, WInsertion(j, "z2", -1))]
            eng = mode_engine(ctx, blocks)
            for ell in range(6):
                assert win.coefficient((ell,)) == eng.value((ell,))


def test_mode_profile():
    assert mode_profile([(1, 1)], (), [(1, 1)]) == (1,)
    assert mode_profile([(1, 1)], (), [(1, 2)]) is None      # unbalanced
    assert mode_profile([], (-1, 1), []) == (1,)
    assert mode_profile([], (1, -1), []) is None             # negative gap
    assert mode_profile([(1, 2), (1, 1)], (0, -3), []) is None
    assert mode_profile([(1, 2), (1, 1)], (0, 3), []) == (2, 3, 3)


def test_w_zero_mode_eigenvalue_via_modes():
    for N in (2, 3):
        ctx = ctx_n(N)
        for hw in (HighestWeight.vacuum(ctx), HighestWeight.generic(ctx)):
            for i in range(N + 1):
                assert w_mode_matrix_element(ctx, hw, [(i, 0)], [], []) == \
                    hw_eigenvalue_w(ctx, hw, i)


def test_vacuum_level_one_degeneracy_N2():
    # <vac| W^1_1 W^1_{-1} |vac> = 0 at N=2: the vacuum is degenerate
    ctx = ctx_n(2)
    vac = HighestWeight.vacuum(ctx)
    assert not w_mode_matrix_element(ctx, vac, [(1, 1)], [], [(1, -1)])
    gen = HighestWeight.generic(ctx)
    assert w_mode_matrix_element(ctx, gen, [(1, 1)], [], [(1, -1)])


def test_mode_window_object():
    ctx = ctx_n(2)
    hw = HighestWeight.generic(ctx)
    win = w_mode_matrix_element(ctx, hw, [], [WInsertion(1, "z1"),
                                              WInsertion(1, "z2")], [],
                                mode_bound=3)
    # two-point function: coefficient at (-n, n) matches the correlator
    ref = w_correlator(ctx, hw, [WInsertion(1, "z1"), WInsertion(1, "z2")], [3])
    for n in range(4):
        assert win.coefficient((-n, n)) == ref.coefficient((n,))
    assert not win.coefficient((-1, 2))


def test_two_current_mode_table_vs_explicit_mode_sum():
    # the f-weighted table equals the literal mode sum
    # sum_l f_l <bra W^i_{n-l} W^j_{m+l} ket>, run 5 terms past its provable
    # termination point (the tail is exactly zero)
    from deformedw.wcurrents import _f_weight_coeffs
    ctx = ctx_n(3)
    hw = HighestWeight.generic(ctx)
    bra, ket = [(1, 2)], [(1, 1), (1, 1)]
    nms = [(n, m) for n in range(-2, 3) for m in range(-2, 3)]
    table = two_current_mode_table(ctx, hw, bra, (1, 0), (2, 0), ket, (1, 2), nms)
    ket_level = 2
    for n, m in nms:
        lmax = max(-1, ket_level - m) + 5
        fcoeffs = _f_weight_coeffs(ctx, (1, 2), max(lmax, 0))
        acc = ctx.zero
        for ell in range(0, lmax + 1):
            me = two_current_mode_table(ctx, hw, bra, (1, 0), (2, 0), ket,
                                        None, [(n - ell, m + ell)])[(n - ell, m + ell)]
            acc = acc + fcoeffs[ell] * me
        assert table[(n, m)] == acc


def test_pinned_block_const_dressing():
    # rank-0 content: the pinned pair degenerates to a single current
    ctx = ctx_n(2)
    hw = HighestWeight.generic(ctx)
    for M in (-2, -1, 0, 1, 2):
        a = pinned_mode_value(ctx, hw, [(1, 2)],
                              {"ranks_shifts": (0, 0, 1, 1), "dress": (0, 1)},
                              [(1, -2)], M)
        b = single_current_mode_value(ctx, hw, [(1, 2)], 1, 1, [(1, -2)], M)
        assert a == b


def test_composite_no_mode_rank0_is_identity():
    # i = 0: the composite of 1 and W^j is W^j itself
    ctx = ctx_n(2)
    hw = HighestWeight.generic(ctx)
    bra, ket = [(1, 1)], [(1, -1)]
    for n in (-1, 0, 1):
        lhs = composite_no_mode(ctx, hw, 0, 1, 4, n, bra, [(1, 1)])
        rhs = single_current_mode_value(ctx, hw, bra, 1, 0, [(1, 1)], n)
        assert lhs == rhs


def test_composite_tail_vanishes():
    ctx = ctx_n(2)
    hw = HighestWeight.generic(ctx)
    bra, ket = [(1, 1)], [(1, 2)]
    for n in (-1, 0, 1, 2):
        v0 = composite_no_mode(ctx, hw, 1, 1, 6, n, bra, ket)
        v5 = composite_no_mode(ctx, hw, 1, 1, 6, n, bra, ket, margin=5)
        assert v0 == v5


def test_pinned_dressed_value_matches_pade_route():
    # f^{1,1}(x) <W^1(z1) W^1(z2)> is rational in x = z2/z1 with poles p^{+-1};
    # the gamma-factor closed form evaluated at a pinning must agree with the
    # independent route: expand the series, Pade-reconstruct, evaluate.
    from deformedw.series import rational_reconstruct
    from deformedw.structfn import f_series
    for N, hw_kind in ((2, "vac"), (2, "gen"), (3, "gen")):
        ctx = ctx_n(N)
        hw = HighestWeight.vacuum(ctx) if hw_kind == "vac" \
            else HighestWeight.generic(ctx)
        corr = w_correlator(ctx, hw, [WInsertion(1, "z1"), WInsertion(1, "z2")],
                            [12])
        dressed = corr * f_series(ctx, 1, 1, 12, corr.vars[0])
        num, den = rational_reconstruct(dressed, 2, 2)
        for pin in (-4, 4, 6):
            x = ctx.s_pow(pin)
            nv = sum((c * x ** k for k, c in enumerate(num)), ctx.zero)
            dv = sum((c * x ** k for k, c in enumerate(den)), ctx.zero)
            blk = pinned_block(ctx, hw, "z", 1, -pin, 1, 0, dress=(1, 1))
            assert blk.block_total(ctx) == nv / dv
