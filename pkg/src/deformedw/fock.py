"""Free-field layer: boson commutators, highest-weight data, exponentiated
boson insertions and their exact multi-point correlators.

States are never materialized as oscillator monomials; every matrix element
is a product of pairwise contraction kernels times zero-mode eigenvalues,
expanded in consecutive-point ratio variables with explicit truncation.

Zero modes are taken central (the paper-level data never pairs them): each
insertion of flavor f contributes the eigenvalue a_f * s^{N+1-2f}.  Highest
weights are normalized so that the product of all a_f is 1 (the trace
constraint sum_i p^{i n} h^i_n = 0 at n = 0), which is also what makes the
full rank-N current the constant 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import ScalarCtx
from .exact import scalar_inv
from .series import LaurentWindow, VarBound
from .structfn import contraction_logkernel


@dataclass(frozen=True)
class HighestWeight:
    """Zero-mode eigenvalues a_1..a_N (exact scalars, all nonzero)."""

    N: int
    a: tuple

    @staticmethod
    def vacuum(ctx: ScalarCtx) -> "HighestWeight":
        return HighestWeight(ctx.N, tuple(ctx.one for _ in range(ctx.N)))

    @staticmethod
    def from_rationals(ctx: ScalarCtx, values) -> "HighestWeight":
        """First N-1 eigenvalues as given; the last is fixed by prod a_i = 1."""
        from .exact import RAT
        vals = [RAT(v) for v in values[:ctx.N - 1]]
        prod = ctx.one
        for v in vals:
            prod = prod * v
        return HighestWeight(ctx.N, tuple(ctx.one * v for v in vals)
                             + (scalar_inv(prod),))

    @staticmethod
    def generic(ctx: ScalarCtx) -> "HighestWeight":
        primes = (2, 3, 5, 7, 11, 13, 17)
        return HighestWeight.from_rationals(ctx, primes[:ctx.N - 1])

    def key(self) -> str:
        return ",".join(str(x) for x in self.a)


@dataclass(frozen=True)
class Insertion:
    """One exponentiated boson at (s^sshift * var); `group` marks blocks whose
    internal contractions are excluded (normal ordering / prepaid pinning)."""

    flavor: int
    var: str
    sshift: int
    group: int


def boson_commutator(ctx: ScalarCtx, i: int, j: int, n: int):
    """[h^i_n, h^j_{-n}]; the commutator with h^j_m vanishes unless m = -n."""
    if n == 0:
        raise ValueError("zero modes are central and carry no pairing")
    return contraction_logkernel(ctx.N, i, j).term(ctx, n)


def zero_mode(ctx: ScalarCtx, hw: HighestWeight, flavor: int):
    key = ("zm", hw.key(), flavor)
    if key not in ctx.caches:
        ctx.caches[key] = hw.a[flavor - 1] * ctx.s_pow(ctx.N + 1 - 2 * flavor)
    return ctx.caches[key]


def kernel_coeffs(ctx: ScalarCtx, i: int, j: int, delta: int, order: int):
    """Taylor coefficients of the contraction C_{ij}(s^delta * x) up to order."""
    key = ("K", i, j, delta)
    cache = ctx.caches.get(key)
    if cache is None:
        cache = ctx.caches[key] = [ctx.one]
    if len(cache) <= order:
        lk = contraction_logkernel(ctx.N, i, j).shifted(delta)
        terms = ctx.caches.setdefault(("Kt", i, j, delta), [])
        for n in range(len(terms) + 1, order + 1):
            terms.append(lk.term(ctx, n))
        for ell in range(len(cache), order + 1):
            acc = ctx.zero
            for n in range(1, ell + 1):
                t = terms[n - 1]
                if t:
                    acc = acc + (n * t) * cache[ell - n]
            cache.append(acc / ell)
    return cache


def hw_eigenvalue_w(ctx: ScalarCtx, hw: HighestWeight, i: int):
    """w^i(lambda): i-th elementary symmetric polynomial of the zero-mode
    factors a_f * s^{N+1-2f}."""
    if not 0 <= i <= ctx.N:
        raise ValueError("rank out of range")
    # elementary symmetric via the generating product
    es = [ctx.one] + [ctx.zero] * i
    for f in range(1, ctx.N + 1):
        z = zero_mode(ctx, hw, f)
        for k in range(min(i, f) , 0, -1):
            es[k] = es[k] + es[k - 1] * z
    return es[i]


def lambda_correlator(ctx: ScalarCtx, hw: HighestWeight, insertions,
                      orders, points=None) -> LaurentWindow:
    """<lambda| product of insertions |lambda> expanded in the ratio variables
    between consecutive distinct points, exactly up to the given per-gap
    orders.  Insertions sharing a named point must share a group (their mutual
    contraction is prepaid or excluded by normal ordering).  `points` may list
    the point sequence explicitly, so that points without oscillator content
    keep their place in the window.
    """
    ins = list(insertions)
    # distinct consecutive variables define the expansion gaps
    varseq = []
    for it in ins:
        if not varseq or varseq[-1] != it.var:
            if it.var in varseq:
                raise ValueError("insertions of one point must be contiguous")
            varseq.append(it.var)
    if points is not None:
        sub = [v for v in points if v in varseq]
        if sub != varseq:
            raise ValueError("insertion points must follow the given order")
        varseq = list(points)
    if not varseq:
        return LaurentWindow.constant((), ctx.one, ctx.zero)
    gaps = len(varseq) - 1
    if len(orders) != gaps:
        raise ValueError(f"need {gaps} gap orders, got {len(orders)}")
    gap_index = {v: k for k, v in enumerate(varseq)}

    zm = ctx.one
    for it in ins:
        zm = zm * zero_mode(ctx, hw, it.flavor)

    acc = {(0,) * gaps: zm}
    for a in range(len(ins)):
        for b in range(a + 1, len(ins)):
            A, B = ins[a], ins[b]
            if A.group == B.group:
                continue
            if A.var == B.var:
                raise ValueError("cross-group contraction at a shared point "
                                 "needs prepaid pinning")
            span = range(gap_index[A.var], gap_index[B.var])
            cap = min(orders[g] for g in span)
            if cap <= 0:
                continue
            coeffs = kernel_coeffs(ctx, A.flavor, B.flavor,
                                   B.sshift - A.sshift, cap)
            new = {}
            for e, c in acc.items():
                room = min(orders[g] - e[g] for g in span)
                for ell in range(0, min(cap, room) + 1):
                    k = coeffs[ell] if ell else None
                    if ell and not k:
                        continue
                    ne = tuple(x + ell if g in span else x
                               for g, x in enumerate(e)) if ell else e
                    v = c * k if ell else c
                    new[ne] = new[ne] + v if ne in new else v
            acc = new
    bounds = [VarBound(0, orders[g], True, False) for g in range(gaps)]
    varnames = tuple(f"{varseq[k + 1]}/{varseq[k]}" for k in range(gaps))
    return LaurentWindow(varnames, acc, bounds, ctx.zero)
