"""Exact scalar tower: big rationals, cyclotomic fields, a quadratic extension
for the half power s = p^(1/2), and truncated power series in hbar.

Every type here is an immutable value with exact ring (mostly field)
arithmetic; nothing in this package ever touches floating point.
"""

from __future__ import annotations

from functools import lru_cache

try:
    from gmpy2 import mpq as RAT
except ImportError:  # pragma: no cover
    from fractions import Fraction as RAT


def rat(a, b=1):
    return RAT(a, b)


RAT_ZERO = RAT(0)
RAT_ONE = RAT(1)


def is_rational(x) -> bool:
    return isinstance(x, (int, type(RAT_ZERO)))


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense lists, constant term first)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(a, b):
    # exact division of integer polynomials, b monic-leading assumed nonzero
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q, r = divmod(c, b[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = q
        if q:
            for j, bj in enumerate(b):
                a[i + j] -= q * bj
    if any(a):
        raise ArithmeticError("nonzero remainder in exact division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple:
    """Integer coefficients of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


class Cyc:
    """Element of the cyclotomic field Q(eta), eta a primitive `order`-th root
    of unity, reduced modulo the order-th cyclotomic polynomial.

    Coefficients are stored as a tuple of rationals of length phi(order).
    """

    __slots__ = ("order", "coeffs")
    __hash__ = None

    def __init__(self, order: int, coeffs):
        phi = len(cyclotomic_poly(order)) - 1
        coeffs = list(coeffs)
        if len(coeffs) > phi:
            coeffs = _cyc_reduce_list(order, coeffs)
        coeffs += [RAT_ZERO] * (phi - len(coeffs))
        self.order = order
        self.coeffs = tuple(RAT(c) for c in coeffs)

    # -- constructors

    @staticmethod
    def const(order: int, value) -> "Cyc":
        return Cyc(order, [RAT(value)])

    @staticmethod
    def root(order: int) -> "Cyc":
        return Cyc(order, [0, 1])

    def root_pow(self, k: int) -> "Cyc":
        """eta^k in the same field (k may be negative; eta^order = 1)."""
        k %= self.order
        return Cyc(self.order, [0] * k + [1])

    # -- ring structure

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if is_rational(other):
            return Cyc.const(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if is_rational(other):
            return Cyc(self.order, [a * other for a in self.coeffs])
        raw = [RAT_ZERO] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        raw[i + j] += a * b
        return Cyc(self.order, raw)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        mod = [RAT(c) for c in cyclotomic_poly(self.order)]
        # extended Euclid over Q[x]: find u with u*self = 1 (mod Phi)
        r0, r1 = mod, list(self.coeffs)
        s0, s1 = [RAT_ZERO], [RAT_ONE]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = r1[0] ** -1
                return Cyc(self.order, [c * inv for c in s1])
            q = _ratpoly_div(r0, r1)
            r0, r1 = r1, _ratpoly_sub(r0, _ratpoly_mul(q, r1))
            s0, s1 = s1, _ratpoly_sub(s0, _ratpoly_mul(q, s1))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        if is_rational(other):
            return Cyc.const(self.order, other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyc.const(self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __bool__(self):
        return any(self.coeffs)

    @property
    def rational_part(self):
        if any(self.coeffs[1:]):
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*eta^{i}")
        return " + ".join(terms) if terms else "0"


def _cyc_reduce_list(order, coeffs):
    mod = cyclotomic_poly(order)
    phi = len(mod) - 1
    coeffs = [RAT(c) for c in coeffs]
    for i in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[i]
        if c:
            coeffs[i] = RAT_ZERO
            for j in range(phi):
                coeffs[i - phi + j] -= c * mod[j]
    return coeffs[:phi]


def cyc_reduce(order: int, raw_coeffs) -> Cyc:
    """Canonical representative of a polynomial in eta modulo the order-th
    cyclotomic polynomial; `raw_coeffs` lists rationals, constant term first."""
    if order < 2:
        raise ValueError("order must be at least 2")
    return Cyc(order, list(raw_coeffs))


def _ratpoly_mul(a, b):
    out = [RAT_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _ratpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [RAT_ZERO] * (n - len(a))
    for i, bi in enumerate(b):
        a[i] -= bi
    return a


def _ratpoly_div(a, b):
    # quotient of a by b over Q (b nonzero, trailing zeros stripped)
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(a) < len(b):
        return [RAT_ZERO]
    q = [RAT_ZERO] * (len(a) - db)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + db] / lb
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q


class QuadExt:
    """Element a + b*s of the quadratic extension Q(s) with s^2 = p.

    Used in generic mode, where p = q/t is a rational that is not a perfect
    square, so that every half-integer power of p is exact.
    """

    __slots__ = ("a", "b", "p")
    __hash__ = None

    def __init__(self, a, b, p):
        self.a = RAT(a)
        self.b = RAT(b)
        self.p = p

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.p != self.p:
                raise ValueError("mixed quadratic extensions")
            return other
        if is_rational(other):
            return QuadExt(other, 0, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.p)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            return QuadExt(self.a * other, self.b * other, self.p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a * o.a + self.b * o.b * self.p,
                       self.a * o.b + self.b * o.a, self.p)

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.p
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(s)")
        return QuadExt(self.a / n, -self.b / n, self.p)

    def __truediv__(self, other):
        if is_rational(other):
            return QuadExt(self.a / other, self.b / other, self.p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1, 0, self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def rational_part(self):
        if self.b:
            raise ValueError("not a rational element")
        return self.a

    def __repr__(self):
        return f"({self.a} + {self.b}*s)"


class HbarSeries:
    """Truncated power series in hbar: coefficients for exponents 0..trunc-1
    are known exactly, everything from hbar^trunc on is unknown.

    Coefficients may be rationals or Cyc elements (mixing is fine, arithmetic
    promotes).  Multiplication tracks truncation precisely through valuations,
    so products of small quantities keep extra known orders.
    """

    __slots__ = ("coeffs", "trunc")
    __hash__ = None

    def __init__(self, coeffs, trunc: int):
        coeffs = list(coeffs)
        if len(coeffs) > trunc:
            coeffs = coeffs[:trunc]
        self.coeffs = tuple(coeffs) + (RAT_ZERO,) * (trunc - len(coeffs))
        self.trunc = trunc

    @staticmethod
    def const(value, trunc: int) -> "HbarSeries":
        return HbarSeries([value], trunc)

    @staticmethod
    def zero(trunc: int) -> "HbarSeries":
        return HbarSeries([], trunc)

    @staticmethod
    def hbar(trunc: int) -> "HbarSeries":
        return HbarSeries([RAT_ZERO, RAT_ONE], trunc)

    @staticmethod
    def exp_hbar(c, trunc: int) -> "HbarSeries":
        """exp(c*hbar) with c rational, as an exact truncated series."""
        coeffs = [RAT_ONE]
        for j in range(1, trunc):
            coeffs.append(coeffs[-1] * c / j)
        return HbarSeries(coeffs, trunc)

    def valuation(self) -> int:
        """Index of the first known nonzero coefficient (trunc if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.trunc

    def coefficient(self, j: int):
        if j >= self.trunc:
            raise ValueError(f"coefficient hbar^{j} beyond truncation {self.trunc}")
        return self.coeffs[j]

    def _coerce(self, other):
        if isinstance(other, HbarSeries):
            return other
        if is_rational(other) or isinstance(other, Cyc):
            return HbarSeries.const(other, self.trunc)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = min(self.trunc, o.trunc)
        return HbarSeries([self.coeffs[i] + o.coeffs[i] for i in range(t)], t)

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries([-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = min(self.trunc, o.trunc)
        return HbarSeries([self.coeffs[i] - o.coeffs[i] for i in range(t)], t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other) or isinstance(other, Cyc):
            return HbarSeries([c * other for c in self.coeffs], self.trunc)
        if not isinstance(other, HbarSeries):
            return NotImplemented
        t = min(self.trunc + other.valuation(), other.trunc + self.valuation())
        out = [RAT_ZERO] * t
        for i, a in enumerate(self.coeffs):
            if a and i < t:
                for j, b in enumerate(other.coeffs):
                    if i + j >= t:
                        break
                    if b:
                        out[i + j] += a * b
        return HbarSeries(out, t)

    __rmul__ = __mul__

    def shift(self, k: int) -> "HbarSeries":
        """Multiply by hbar^k (k may be negative if divisible)."""
        if k >= 0:
            return HbarSeries([RAT_ZERO] * k + list(self.coeffs), self.trunc + k)
        if any(self.coeffs[:-k]):
            raise ValueError("not divisible by hbar^%d" % -k)
        return HbarSeries(self.coeffs[-k:], self.trunc + k)

    def inverse(self) -> "HbarSeries":
        if not self.coeffs or not self.coeffs[0]:
            raise ZeroDivisionError("inverse needs an invertible constant term")
        c0 = self.coeffs[0]
        inv0 = 1 / RAT(c0) if is_rational(c0) else c0.inverse()
        out = [inv0]
        for j in range(1, self.trunc):
            acc = RAT_ZERO
            for i in range(1, j + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * out[j - i]
            out.append(-inv0 * acc)
        return HbarSeries(out, self.trunc)

    def __truediv__(self, other):
        if is_rational(other) or isinstance(other, Cyc):
            inv = 1 / RAT(other) if is_rational(other) else other.inverse()
            return self * inv
        if not isinstance(other, HbarSeries):
            return NotImplemented
        v = other.valuation()
        if v == other.trunc:
            raise ZeroDivisionError("division by series with no known nonzero term")
        num = self.shift(-v) if v else self
        den = other.shift(-v) if v else other
        return num * den.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = HbarSeries.const(RAT_ONE, self.trunc if n else self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exp(self) -> "HbarSeries":
        if self.coeffs and self.coeffs[0]:
            raise ValueError("exp needs zero constant term")
        t = self.trunc
        out = [RAT_ONE] + [RAT_ZERO] * (t - 1)
        for j in range(1, t):
            acc = RAT_ZERO
            for i in range(1, j + 1):
                if self.coeffs[i]:
                    acc = acc + i * self.coeffs[i] * out[j - i]
            out[j] = acc / j
        return HbarSeries(out, t)

    def log(self) -> "HbarSeries":
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        t = self.trunc
        out = [RAT_ZERO] * t
        for j in range(1, t):
            acc = j * self.coeffs[j]
            for i in range(1, j):
                if out[i]:
                    acc = acc - i * out[i] * self.coeffs[j - i]
            out[j] = acc / j
        return HbarSeries(out, t)

    def __eq__(self, other):
        """Equality of all known coefficients on the common truncation."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = min(self.trunc, o.trunc)
        return all(self.coeffs[i] == o.coeffs[i] for i in range(t))

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __repr__(self):
        terms = [f"({c})*h^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(h^{self.trunc})"


def scalar_is_zero(x) -> bool:
    """Exact zero test for any member of the scalar tower (for HbarSeries:
    all known coefficients vanish)."""
    return not bool(x)


def scalar_inv(x):
    if is_rational(x):
        return 1 / RAT(x)
    return x.inverse()
