"""Evaluation contexts for the two-parameter algebra.

A ScalarCtx fixes how the parameters q, t (and the derived p = q/t,
s = p^(1/2)) are realized:

* generic   -- q, t are rational sample points; scalars live in Q or in the
               quadratic extension Q(s) with s^2 = p.
* limit1    -- q = e^h, t = q^beta with beta fixed; scalars are truncated
               series in h over Q.
* limit2    -- q = e^h, t = omega^(-1) q^((k+N)/N) with integer level k;
               scalars are truncated series in h over the cyclotomic field
               Q(eta), eta = primitive 2N-th root, omega = eta^2.

All half-integer powers of p are integer powers of s, so every exponent in
the engine is an integer and every value is exact.
"""

from __future__ import annotations

from .exact import (Cyc, HbarSeries, QuadExt, RAT, RAT_ONE, RAT_ZERO, rat)

DEFAULT_GENERIC_POINTS = ((rat(3, 2), rat(5, 3)), (rat(2, 7), rat(3, 5)))


class ScalarCtx:
    """Shared scalar arithmetic for one choice of (q, t)."""

    def __init__(self, N: int, mode: str, **kw):
        if N < 2:
            raise ValueError("rank parameter N must be at least 2")
        self.N = N
        self.mode = mode
        self._spow = {}
        self._qpow = {}
        self._tpow = {}
        self.caches = {}

        if mode == "generic":
            q, t = RAT(kw["q"]), RAT(kw["t"])
            if not q or not t:
                raise ValueError("q, t must be nonzero")
            self.q = q
            self.t = t
            self.p = q / t
            self._check_nondegenerate(kw.get("degeneracy_bound", 64))
            self.zero = RAT_ZERO
            self.one = RAT_ONE
            self.s = QuadExt(0, 1, self.p)
        elif mode == "limit1":
            beta = RAT(kw["beta"])
            T = int(kw.get("trunc", 8))
            self.beta = beta
            self.trunc = T
            self.zero = HbarSeries.zero(T)
            self.one = HbarSeries.const(RAT_ONE, T)
            self.q = HbarSeries.exp_hbar(RAT_ONE, T)
            self.t = HbarSeries.exp_hbar(beta, T)
            self.p = HbarSeries.exp_hbar(1 - beta, T)
            self.s = HbarSeries.exp_hbar((1 - beta) / 2, T)
        elif mode == "limit2":
            k = int(kw["level"])
            T = int(kw.get("trunc", 4))
            self.level = k
            self.trunc = T
            order = 2 * N
            self.order = order
            self.eta = Cyc.root(order)
            self.omega = self.eta * self.eta
            self.zero = HbarSeries.zero(T)
            self.one = HbarSeries.const(RAT_ONE, T)
            self.q = HbarSeries.exp_hbar(RAT_ONE, T)
            # t = omega^{-1} e^{h(k+N)/N};  p = omega e^{-hk/N};  s = eta e^{-hk/2N}
            self.t = HbarSeries.exp_hbar(rat(k + N, N), T) * self.eta.root_pow(-2)
            self.p = HbarSeries.exp_hbar(rat(-k, N), T) * self.omega
            self.s = HbarSeries.exp_hbar(rat(-k, 2 * N), T) * self.eta
        else:
            raise ValueError(f"unknown mode {mode!r}")

    # -- constructors

    @staticmethod
    def generic(N: int, q, t, **kw) -> "ScalarCtx":
        return ScalarCtx(N, "generic", q=q, t=t, **kw)

    @staticmethod
    def limit1(N: int, beta, trunc: int = 8) -> "ScalarCtx":
        return ScalarCtx(N, "limit1", beta=beta, trunc=trunc)

    @staticmethod
    def limit2(N: int, level: int, trunc: int = 4) -> "ScalarCtx":
        return ScalarCtx(N, "limit2", level=level, trunc=trunc)

    def _check_nondegenerate(self, bound: int):
        p = self.p
        if not p:
            raise ValueError("p = q/t must be nonzero")
        num, den = p.numerator, p.denominator
        if abs(num) == abs(den):
            raise ValueError("degenerate point: p is a root of unity, "
                             "1 - p^M vanishes for some M")
        # with |p| != 1 rational, 1 - p^(M n) is automatically nonzero for
        # every M, n up to (and beyond) the declared bound
        self.degeneracy_bound = bound

    # -- cached powers

    def q_pow(self, n: int):
        try:
            return self._qpow[n]
        except KeyError:
            v = self._qpow[n] = self.q ** n
            return v

    def t_pow(self, n: int):
        try:
            return self._tpow[n]
        except KeyError:
            v = self._tpow[n] = self.t ** n
            return v

    def s_pow(self, a: int):
        """p^(a/2) as an exact scalar (integer powers of s)."""
        try:
            return self._spow[a]
        except KeyError:
            pass
        if self.mode == "generic":
            half, odd = divmod(a, 2)
            v = self.p ** half
            if odd:
                v = self.s * v
        else:
            v = self.s ** a
        self._spow[a] = v
        return v

    def p_pow(self, n: int):
        return self.s_pow(2 * n)

    def eta_pow(self, a: int) -> Cyc:
        if self.mode != "limit2":
            raise ValueError("eta lives in the limit2 context")
        return self.eta.root_pow(a)

    def omega_pow(self, a: int) -> Cyc:
        if self.mode != "limit2":
            raise ValueError("omega lives in the limit2 context")
        return self.eta.root_pow(2 * a)

    # -- composite quantities

    def a_factor(self, n: int):
        """(1 - q^n)(1 - t^(-n)), the ubiquitous numerator of Eq.-level data."""
        return (1 - self.q_pow(n)) * (1 - self.t_pow(-n))

    def prefactor(self):
        """(1 - q)(1 - t^(-1)) / (1 - p)."""
        return self.a_factor(1) / (1 - self.p_pow(1))

    def describe(self) -> str:
        if self.mode == "generic":
            return f"generic(q={self.q}, t={self.t})"
        if self.mode == "limit1":
            return f"limit1(beta={self.beta}, trunc={self.trunc})"
        return f"limit2(level={self.level}, N={self.N}, trunc={self.trunc})"
